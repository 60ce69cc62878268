#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pbg/reservoir.hpp"

namespace pbg {

struct EmissionParams {
    ReservoirModel reservoir;
    double gamma = 1.0; // Markovian channel rate, > 0
};

struct Peak {
    double delta;
    double height;
};

struct EmissionSpectrum {
    Eigen::ArrayXd grid;            // detunings (band edges snapped onto the grid)
    Eigen::ArrayXd values;          // S(delta) >= 0, arbitrary units
    std::vector<double> dark_lines; // band edges inside the grid range
    std::vector<Peak> peaks;        // interior local maxima, parabolic-refined
};

// Long-time emission spectrum into the Markovian channel,
//   S(delta) = gamma / | -i delta + gamma/2 + K~(-i delta) |^2,
// with S = 0 exactly at band edges (continuity convention).
double emission_at(const EmissionParams& p, double delta);

EmissionSpectrum spectrum_eval(const EmissionParams& p, Eigen::ArrayXd grid);

// Band-edge detunings, each verified to be a spectral zero:
// S(edge) = 0 and S(edge +- 1e-6) <= rel_tol * max(S). Also scans the sampled
// spectrum for zeros away from the edges (there must be none).
std::vector<double> find_dark_lines(const EmissionSpectrum& spectrum, const EmissionParams& p,
                                    double rel_tol = 1e-4);

// Strict interior local maxima with three-point parabolic refinement.
std::vector<Peak> find_peaks(const EmissionSpectrum& spectrum);

} // namespace pbg
