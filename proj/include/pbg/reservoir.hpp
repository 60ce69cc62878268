#pragma once

#include <complex>
#include <vector>

namespace pbg {

enum class ReservoirKind { None, SingleBand, DoubleBand };

// Structured reservoir seen by the |2>-|1> transition. All frequencies are
// detunings from that line, in units of the coupling scale beta.
//
// The memory kernel is a sum of inverse-square-root components,
//   K(t) = sum_c w_c e^{-i f_c t} / sqrt(pi t),
// whose Laplace transform is K~(s) = sum_c w_c / sqrt(s + i f_c) with the
// principal square root (cut on the negative real axis). Weights:
//   double band: w = (beta^{3/2}/2) e^{+i pi/4} at f = delta_g1,
//                w = (beta^{3/2}/2) e^{-i pi/4} at f = delta_g2;
//   single band: w = beta^{3/2} e^{-i pi/4} at f = delta_g (full weight).
struct ReservoirModel {
    ReservoirKind kind = ReservoirKind::None;
    double beta = 1.0;      // coupling scale, >= 0
    double delta_g1 = 0.0;  // lower band edge (double band only)
    double delta_g2 = 0.0;  // upper band edge; the lone edge for single band

    static ReservoirModel none();
    static ReservoirModel single_band(double beta, double delta_g);
    static ReservoirModel double_band(double beta, double delta_g1, double delta_g2);
};

struct KernelTerm {
    std::complex<double> weight;
    double freq;
};

// Band-edge detunings: {} / {delta_g} / {delta_g1, delta_g2}.
std::vector<double> band_edges(const ReservoirModel& m);

// The (w_c, f_c) component list; empty for kind None or beta = 0.
std::vector<KernelTerm> kernel_terms(const ReservoirModel& m);

// Density of reservoir modes vs detuning: (1/2pi)/sqrt(distance past an edge),
// 0 inside the gap, +inf exactly at an edge. Inspection only -- the kernel
// functions below are the source of truth for all physics.
double density_of_modes(const ReservoirModel& m, double delta);

// K~(s), principal branch. Throws ContractViolation at the branch points
// s = -i*edge ("band-edge divergence").
std::complex<double> kernel_laplace(const ReservoirModel& m, std::complex<double> s);

// d/ds K~(s); same branch-point behaviour as kernel_laplace.
std::complex<double> kernel_laplace_ds(const ReservoirModel& m, std::complex<double> s);

// Boundary value lim_{eps->0+} K~(eps - i*delta). At a band edge returns the
// divergence sentinel (inf, inf); callers map it to 0 by continuity.
std::complex<double> kernel_laplace_on_axis(const ReservoirModel& m, double delta);

bool is_kernel_divergent(std::complex<double> v);

// K(t), t > 0 (the kernel is integrably singular at t = 0).
std::complex<double> kernel_time(const ReservoirModel& m, double t);

} // namespace pbg
