#include "pbg/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "pbg/errors.hpp"
#include "pbg/faddeeva.hpp"
#include "pbg/grid.hpp"

namespace pbg {
namespace {

constexpr double kSqrtPi = 1.77245385090551603;
constexpr double kInvSqrtPi = 5.64189583547756287e-01;

// t2^p - t1^p without cancellation (0 <= t1 < t2, p > 0).
double pow_diff(double t1, double t2, double p)
{
    if (t1 == 0.0)
        return std::pow(t2, p);
    return std::pow(t1, p) * std::expm1(p * std::log1p((t2 - t1) / t1));
}

} // namespace

namespace detail {

// Closed-form moments of the oscillatory inverse-sqrt kernel over one panel.
// Small |f| t2: truncated power series. Otherwise via P(T) = e^{-aT} w(i sqrt(aT))
// with a = i f and w the Faddeeva function (arguments stay in the upper half
// plane for either sign of f).
PanelMoments kernel_moments(double f, double t1, double t2)
{
    const std::complex<double> a(0.0, f);
    if (std::abs(f) * t2 <= 0.5) {
        std::complex<double> m0 = 0.0, g = 0.0, coef = 1.0; // coef = (-a)^k / k!
        for (int k = 0; k < 30; ++k) {
            if (k > 0)
                coef *= -a / double(k);
            const std::complex<double> term0 = coef * (pow_diff(t1, t2, k + 0.5) / (k + 0.5));
            const std::complex<double> term1 = coef * (pow_diff(t1, t2, k + 1.5) / (k + 1.5));
            m0 += term0;
            g += term1;
            if (std::abs(term0) <= 1e-17 * std::abs(m0) && std::abs(term1) <= 1e-17 * std::abs(g))
                break;
        }
        m0 *= kInvSqrtPi;
        g *= kInvSqrtPi;
        return {m0, g - t1 * m0};
    }
    const std::complex<double> sa = std::sqrt(a); // arg = +-pi/4
    const std::complex<double> isa(-sa.imag(), sa.real());
    const std::complex<double> e1 = std::exp(-a * t1), e2 = std::exp(-a * t2);
    const std::complex<double> P1 = e1 * faddeeva_w(isa * std::sqrt(t1));
    const std::complex<double> P2 = e2 * faddeeva_w(isa * std::sqrt(t2));
    const std::complex<double> m0 = (P1 - P2) / sa;
    const std::complex<double> gdiff =
        (P1 - P2) / (2.0 * a * sa) - (e2 * std::sqrt(t2) - e1 * std::sqrt(t1)) / (kSqrtPi * a);
    return {m0, gdiff - t1 * m0};
}

} // namespace detail

namespace {

void check_grid(const SolverGrid& grid)
{
    if (!(grid.t_max > 0.0))
        throw ConfigError("t_max must be positive");
    if (grid.steps < 2)
        throw ConfigError("steps must be at least 2");
}

// Solves y' = lin*y + src - int_0^t K(t-t') y(t') dt' on a uniform grid.
// Panel weights: with linear interpolation of y on [kh,(k+1)h] the memory
// integral becomes A_0 y_n + sum_{m>=1} C_m y_{n-m} + B_{n-1} y_0, all
// precomputed; the trapezoidal step is then implicit only in y_n.
Eigen::ArrayXcd volterra_solve(const std::vector<KernelTerm>& terms, std::complex<double> lin,
                               std::complex<double> src, std::complex<double> y0, double t_max,
                               int steps, double norm_cap)
{
    const int N = steps;
    const double h = t_max / N;

    std::vector<std::complex<double>> A(N), B(N);
    for (int k = 0; k < N; ++k) {
        std::complex<double> Ak = 0.0, Bk = 0.0;
        for (const auto& term : terms) {
            const detail::PanelMoments m = detail::kernel_moments(term.freq, k * h, (k + 1) * h);
            Ak += term.weight * (m.m0 - m.m1 / h);
            Bk += term.weight * (m.m1 / h);
        }
        A[k] = Ak;
        B[k] = Bk;
    }
    // C_m = A_m + B_{m-1}, split into real/imag arrays so the convolution
    // runs as four vectorizable real dot products.
    Eigen::ArrayXd Cr = Eigen::ArrayXd::Zero(N), Ci = Eigen::ArrayXd::Zero(N);
    for (int m = 1; m < N; ++m) {
        const std::complex<double> c = A[m] + B[m - 1];
        Cr[m] = c.real();
        Ci[m] = c.imag();
    }

    Eigen::ArrayXcd y(N + 1);
    Eigen::ArrayXd rr(N + 1), ri(N + 1); // y reversed: rr[N-k] = Re y_k
    y[0] = y0;
    rr[N] = y0.real();
    ri[N] = y0.imag();

    const std::complex<double> A0 = A[0];
    const std::complex<double> denom = 1.0 - 0.5 * h * lin + 0.5 * h * A0;
    std::complex<double> Iprev = 0.0;

    for (int n = 1; n <= N; ++n) {
        std::complex<double> conv = B[n - 1] * y0;
        if (n >= 2) {
            const int len = n - 1;
            const auto cr = Cr.segment(1, len).matrix();
            const auto ci = Ci.segment(1, len).matrix();
            const auto br = rr.segment(N - n + 1, len).matrix();
            const auto bi = ri.segment(N - n + 1, len).matrix();
            conv += std::complex<double>(cr.dot(br) - ci.dot(bi), cr.dot(bi) + ci.dot(br));
        }
        const std::complex<double> yn =
            (y[n - 1] * (1.0 + 0.5 * h * lin) - 0.5 * h * (Iprev + conv) + h * src) / denom;
        if (!std::isfinite(yn.real()) || !std::isfinite(yn.imag()))
            throw ContractViolation("solver diverged; reduce dt");
        if (norm_cap > 0.0 && !(std::abs(yn) <= norm_cap))
            throw ContractViolation("amplitude norm bound exceeded; reduce dt");
        y[n] = yn;
        rr[N - n] = yn.real();
        ri[N - n] = yn.imag();
        Iprev = A0 * yn + conv;
    }
    return y;
}

std::string describe(const char* head, const ReservoirModel& m, double gamma)
{
    char buf[256];
    switch (m.kind) {
    case ReservoirKind::None:
        std::snprintf(buf, sizeof buf, "%s model=none gamma=%.17g", head, gamma);
        break;
    case ReservoirKind::SingleBand:
        std::snprintf(buf, sizeof buf, "%s model=single beta=%.17g dg=%.17g gamma=%.17g", head,
                      m.beta, m.delta_g2, gamma);
        break;
    case ReservoirKind::DoubleBand:
        std::snprintf(buf, sizeof buf, "%s model=double beta=%.17g dg1=%.17g dg2=%.17g gamma=%.17g",
                      head, m.beta, m.delta_g1, m.delta_g2, gamma);
        break;
    }
    return buf;
}

} // namespace

AmplitudeTrajectory solve_b2(const EmissionParams& p, const SolverGrid& grid)
{
    check_grid(grid);
    if (p.gamma < 0.0)
        throw ConfigError("gamma must be non-negative");
    const std::vector<KernelTerm> terms = kernel_terms(p.reservoir);
    if (p.gamma == 0.0 && terms.empty())
        throw ConfigError("gamma must be positive when no reservoir is configured");

    AmplitudeTrajectory traj;
    traj.kind = TrajectoryKind::B2Emission;
    traj.dt = grid.dt();
    traj.times = Eigen::ArrayXd::LinSpaced(grid.steps + 1, 0.0, grid.t_max);
    traj.values = volterra_solve(terms, -0.5 * p.gamma, 0.0, 1.0, grid.t_max, grid.steps,
                                 1.0 + 1e-6);
    char tail[128];
    std::snprintf(tail, sizeof tail, " t_max=%.17g steps=%d", grid.t_max, grid.steps);
    traj.params_echo = describe("b2:", p.reservoir, p.gamma) + tail;
    return traj;
}

AmplitudeTrajectory solve_c2(const ProbeParams& p, double omega_rabi, double delta,
                             const SolverGrid& grid)
{
    check_grid(grid);
    if (!(p.gamma > 0.0))
        throw ConfigError("gamma must be positive");
    if (omega_rabi < 0.0)
        throw ConfigError("omega must be non-negative");

    std::vector<KernelTerm> terms = kernel_terms(p.reservoir);
    for (auto& t : terms)
        t.freq -= delta; // K(tau) e^{i delta tau}

    AmplitudeTrajectory traj;
    traj.kind = TrajectoryKind::C2Probe;
    traj.dt = grid.dt();
    traj.times = Eigen::ArrayXd::LinSpaced(grid.steps + 1, 0.0, grid.t_max);
    traj.values = volterra_solve(terms, std::complex<double>(-0.5 * p.gamma, delta),
                                 std::complex<double>(0.0, -omega_rabi), 0.0, grid.t_max,
                                 grid.steps, 0.0);
    for (double e : band_edges(p.reservoir))
        if (std::abs(delta - e) <= 1e-9)
            traj.note = "band-edge: slow relaxation";
    char tail[160];
    std::snprintf(tail, sizeof tail, " omega=%.17g delta=%.17g t_max=%.17g steps=%d", omega_rabi,
                  delta, grid.t_max, grid.steps);
    traj.params_echo = describe("c2:", p.reservoir, p.gamma) + tail;
    return traj;
}

SteadyState steady_state_c2(const ProbeParams& p, double omega_rabi, double delta)
{
    if (!(p.gamma > 0.0))
        throw ConfigError("gamma must be positive");
    const std::complex<double> K = kernel_laplace_on_axis(p.reservoir, delta);
    if (is_kernel_divergent(K))
        return {{0.0, 0.0}, "divergent kernel"};
    const std::complex<double> denom(delta - K.imag(), 0.5 * p.gamma + K.real());
    return {omega_rabi / denom, ""};
}

EmissionSpectrum spectrum_from_trajectory(const AmplitudeTrajectory& traj,
                                          const EmissionParams& p, Eigen::ArrayXd grid)
{
    if (traj.kind != TrajectoryKind::B2Emission)
        throw ContractViolation("b2 emission trajectory required");
    if (!(p.gamma > 0.0))
        throw ConfigError("gamma must be positive");
    const Eigen::Index N = traj.values.size() - 1;
    if (N < 1)
        throw ConfigError("trajectory too short");
    const double tail = std::abs(traj.values[N]);
    if (!(tail < 1e-3)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "trajectory tail |b2(t_max)| = %.3g; increase t_max", tail);
        throw ContractViolation(msg);
    }
    require_strictly_increasing(grid);
    snap_to_points(grid, band_edges(p.reservoir));

    const double h = traj.dt;
    EmissionSpectrum s;
    s.grid = std::move(grid);
    s.values.resize(s.grid.size());
    for (Eigen::Index i = 0; i < s.grid.size(); ++i) {
        const double d = s.grid[i];
        const std::complex<double> rot = std::exp(std::complex<double>(0.0, d * h));
        std::complex<double> acc = 0.0, z = 1.0;
        for (Eigen::Index k = 0; k <= N; ++k) {
            if ((k & 1023) == 0) // refresh the phase recurrence to limit drift
                z = std::exp(std::complex<double>(0.0, d * h * double(k)));
            acc += traj.values[k] * z;
            z *= rot;
        }
        acc -= 0.5 * (traj.values[0] + traj.values[N] * std::exp(std::complex<double>(0.0, d * h * double(N))));
        s.values[i] = p.gamma * std::norm(h * acc);
    }
    s.peaks = find_peaks(s);
    return s;
}

ConvergenceReport convergence_check(const std::function<std::complex<double>(const SolverGrid&)>& run,
                                    const SolverGrid& base, int refinement_levels)
{
    if (refinement_levels < 2)
        throw ConfigError("refinement_levels must be at least 2");
    check_grid(base);

    ConvergenceReport rep;
    for (int j = 0; j <= refinement_levels; ++j) {
        SolverGrid g{base.t_max, base.steps << j};
        rep.dts.push_back(g.dt());
        rep.finals.push_back(run(g));
    }
    const size_t L = rep.finals.size();
    const double e_prev = std::abs(rep.finals[L - 2] - rep.finals[L - 3]);
    const double e_last = std::abs(rep.finals[L - 1] - rep.finals[L - 2]);
    if (e_last == 0.0) {
        rep.observed_order = std::numeric_limits<double>::infinity();
        rep.extrapolated = rep.finals[L - 1];
        rep.passed = true;
        return rep;
    }
    rep.observed_order = std::log2(e_prev / e_last);
    rep.extrapolated = rep.finals[L - 1] + (rep.finals[L - 1] - rep.finals[L - 2]) /
                                               (std::exp2(rep.observed_order) - 1.0);
    rep.passed = rep.observed_order >= 0.9;
    return rep;
}

} // namespace pbg
