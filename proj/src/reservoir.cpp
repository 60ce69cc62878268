#include "pbg/reservoir.hpp"

#include <cmath>
#include <limits>

#include "pbg/errors.hpp"

namespace pbg {
namespace {

constexpr double kPi = 3.14159265358979324;
const std::complex<double> kSqrtI(0.70710678118654752, 0.70710678118654752);   // e^{+i pi/4}
const std::complex<double> kInvSqrtI(0.70710678118654752, -0.70710678118654752); // e^{-i pi/4}

const std::complex<double> kDivergent(std::numeric_limits<double>::infinity(),
                                      std::numeric_limits<double>::infinity());

void check_beta(double beta)
{
    if (!(beta >= 0.0))
        throw ConfigError("beta must be non-negative");
}

} // namespace

ReservoirModel ReservoirModel::none()
{
    return ReservoirModel{};
}

ReservoirModel ReservoirModel::single_band(double beta, double delta_g)
{
    check_beta(beta);
    ReservoirModel m;
    m.kind = ReservoirKind::SingleBand;
    m.beta = beta;
    m.delta_g2 = delta_g;
    return m;
}

ReservoirModel ReservoirModel::double_band(double beta, double delta_g1, double delta_g2)
{
    check_beta(beta);
    if (!(delta_g1 < delta_g2))
        throw ConfigError("gap width must be positive (dg1 < dg2)");
    ReservoirModel m;
    m.kind = ReservoirKind::DoubleBand;
    m.beta = beta;
    m.delta_g1 = delta_g1;
    m.delta_g2 = delta_g2;
    return m;
}

std::vector<double> band_edges(const ReservoirModel& m)
{
    switch (m.kind) {
    case ReservoirKind::None:       return {};
    case ReservoirKind::SingleBand: return {m.delta_g2};
    case ReservoirKind::DoubleBand: return {m.delta_g1, m.delta_g2};
    }
    return {};
}

std::vector<KernelTerm> kernel_terms(const ReservoirModel& m)
{
    if (m.kind == ReservoirKind::None || m.beta == 0.0)
        return {};
    const double w = std::pow(m.beta, 1.5);
    if (m.kind == ReservoirKind::SingleBand)
        return {{w * kInvSqrtI, m.delta_g2}};
    return {{0.5 * w * kSqrtI, m.delta_g1}, {0.5 * w * kInvSqrtI, m.delta_g2}};
}

double density_of_modes(const ReservoirModel& m, double delta)
{
    if (m.kind == ReservoirKind::None)
        throw ContractViolation("no non-Markovian reservoir configured");
    const double inv2pi = 1.0 / (2.0 * kPi);
    auto branch = [&](double past_edge) -> double {
        if (past_edge < 0.0) return 0.0;
        if (past_edge == 0.0) return std::numeric_limits<double>::infinity();
        return inv2pi / std::sqrt(past_edge);
    };
    if (m.kind == ReservoirKind::SingleBand)
        return branch(delta - m.delta_g2);
    return branch(m.delta_g1 - delta) + branch(delta - m.delta_g2);
}

std::complex<double> kernel_laplace(const ReservoirModel& m, std::complex<double> s)
{
    std::complex<double> acc = 0.0;
    for (const auto& term : kernel_terms(m)) {
        const std::complex<double> arg = s + std::complex<double>(0.0, term.freq);
        if (arg == std::complex<double>(0.0, 0.0))
            throw ContractViolation("band-edge divergence");
        acc += term.weight / std::sqrt(arg);
    }
    return acc;
}

std::complex<double> kernel_laplace_ds(const ReservoirModel& m, std::complex<double> s)
{
    std::complex<double> acc = 0.0;
    for (const auto& term : kernel_terms(m)) {
        const std::complex<double> arg = s + std::complex<double>(0.0, term.freq);
        if (arg == std::complex<double>(0.0, 0.0))
            throw ContractViolation("band-edge divergence");
        acc += -0.5 * term.weight / (arg * std::sqrt(arg));
    }
    return acc;
}

std::complex<double> kernel_laplace_on_axis(const ReservoirModel& m, double delta)
{
    // s = -i*delta: each component argument is i(f_c - delta), pure imaginary,
    // never on the principal cut, so sqrt() already gives the eps -> 0+ limit.
    std::complex<double> acc = 0.0;
    for (const auto& term : kernel_terms(m)) {
        const double x = term.freq - delta;
        if (x == 0.0)
            return kDivergent;
        acc += term.weight / std::sqrt(std::complex<double>(0.0, x));
    }
    return acc;
}

bool is_kernel_divergent(std::complex<double> v)
{
    return std::isinf(v.real()) || std::isinf(v.imag());
}

std::complex<double> kernel_time(const ReservoirModel& m, double t)
{
    if (!(t > 0.0))
        throw ContractViolation("kernel_time requires t > 0");
    std::complex<double> acc = 0.0;
    for (const auto& term : kernel_terms(m))
        acc += term.weight * std::exp(std::complex<double>(0.0, -term.freq * t));
    return acc / std::sqrt(kPi * t);
}

} // namespace pbg
