#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pbg/emission.hpp"
#include "pbg/susceptibility.hpp"

namespace pbg {

struct SolverGrid {
    double t_max = 40.0; // in units of 1/beta
    int steps = 20000;
    double dt() const { return t_max / steps; }
};

enum class TrajectoryKind { B2Emission, C2Probe };

struct AmplitudeTrajectory {
    Eigen::ArrayXd times;
    Eigen::ArrayXcd values;
    TrajectoryKind kind = TrajectoryKind::B2Emission;
    double dt = 0.0;
    std::string note;        // "band-edge: slow relaxation" when applicable
    std::string params_echo; // parameter set used, for output provenance
};

// Excited-state amplitude under spontaneous emission,
//   b2' = -(gamma/2) b2 - int_0^t K(t-t') b2(t') dt',  b2(0) = 1.
// Product-integration trapezoidal scheme: the weakly singular kernel is
// integrated exactly per panel against a linear interpolant of b2; the
// newest value is implicit and solved per step.
AmplitudeTrajectory solve_b2(const EmissionParams& p, const SolverGrid& grid);

// Probed-transition amplitude for a weak probe of Rabi frequency omega_rabi
// and detuning delta,
//   c2' = -i omega + (i delta - gamma/2) c2 - int_0^t K(t-t') e^{i delta (t-t')} c2(t') dt',
// c2(0) = 0; same scheme with the frequency-shifted kernel.
AmplitudeTrajectory solve_c2(const ProbeParams& p, double omega_rabi, double delta,
                             const SolverGrid& grid);

struct SteadyState {
    std::complex<double> value;
    std::string note; // "divergent kernel" exactly at a band edge (value 0 by continuity)
};

// Closed-form long-time limit c2(inf) = omega / (delta + i gamma/2 + i K~(-i delta)).
SteadyState steady_state_c2(const ProbeParams& p, double omega_rabi, double delta);

// Emission spectrum from a stored b2 trajectory:
//   S(delta) = gamma |int_0^{t_max} b2(t) e^{i delta t} dt|^2  (trapezoidal).
// Requires the tail to have decayed: |b2(t_max)| < 1e-3.
EmissionSpectrum spectrum_from_trajectory(const AmplitudeTrajectory& traj,
                                          const EmissionParams& p, Eigen::ArrayXd grid);

struct ConvergenceReport {
    std::vector<double> dts;
    std::vector<std::complex<double>> finals; // final amplitude per refinement level
    double observed_order = 0.0;
    std::complex<double> extrapolated;
    bool passed = false; // observed_order >= 0.9
};

// Runs `run` at dt, dt/2, ..., dt/2^levels and estimates the convergence
// order from the last three finals (Richardson).
ConvergenceReport convergence_check(const std::function<std::complex<double>(const SolverGrid&)>& run,
                                    const SolverGrid& base, int refinement_levels = 2);

namespace detail {

struct PanelMoments {
    std::complex<double> m0; // int_{t1}^{t2} e^{-i f tau} / sqrt(pi tau) dtau
    std::complex<double> m1; // same with an extra (tau - t1) factor
};

// Exact panel moments of the oscillatory inverse-sqrt kernel (the weights of
// the product-integration scheme); exposed for verification against quadrature.
PanelMoments kernel_moments(double f, double t1, double t2);

} // namespace detail

} // namespace pbg
