#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pbg/reservoir.hpp"

namespace pbg {

struct ProbeParams {
    ReservoirModel reservoir;
    double gamma = 1.0; // decay rate of |2>, > 0
    double chi0 = 1.0;  // susceptibility prefactor (arbitrary units), > 0
};

struct ProbeResponse {
    Eigen::ArrayXd grid;     // probe detunings (band edges snapped onto the grid)
    Eigen::ArrayXcd chi;
    Eigen::ArrayXd absorption; // -Im chi, >= 0 (passive medium)
    Eigen::ArrayXd dispersion; // Re chi
    Eigen::ArrayXd slope;      // d(Re chi)/d delta, central differences
    std::vector<double> transparency_points; // band edges inside the grid range
};

// Steady-state linear probe susceptibility,
//   chi(delta) = -chi0 / (delta - i gamma/2 - i conj(K~(-i delta))),
// with chi = 0 exactly at band edges (continuity convention).
std::complex<double> chi_at(const ProbeParams& p, double delta);

// Closed-form d chi / d delta (for validating the sampled slope).
std::complex<double> chi_slope_analytic(const ProbeParams& p, double delta);

ProbeResponse chi_eval(const ProbeParams& p, Eigen::ArrayXd grid);

// Band-edge detunings, each verified to be a transparency point:
// |chi(edge)| = 0 and |chi(edge +- 1e-6)| <= rel_tol * max|chi|.
std::vector<double> transparency_windows(const ProbeResponse& response, const ProbeParams& p,
                                         double rel_tol = 1e-2);

// (transparency point, d(Re chi)/d delta there); a large positive slope
// means a strongly reduced group velocity for a probe pulse.
std::vector<std::pair<double, double>> group_slope_report(const ProbeResponse& response);

} // namespace pbg
