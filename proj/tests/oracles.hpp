#pragma once

// Independent quadrature oracles used to validate closed-form evaluations.

#include <complex>
#include <functional>

#include "pbg/reservoir.hpp"

namespace oracles {

// Simpson rule on [a, b] with n (even) intervals.
inline std::complex<double> simpson(const std::function<std::complex<double>(double)>& f, double a,
                                    double b, int n)
{
    const double h = (b - a) / n;
    std::complex<double> acc = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// int_0^inf K(t) e^{-s t} dt via the substitution t = u^2, which removes the
// integrable singularity at t = 0 and leaves a smooth integrand.
inline std::complex<double> laplace_via_quadrature(const pbg::ReservoirModel& m,
                                                   std::complex<double> s, double u_max = 16.0,
                                                   int n = 32000)
{
    constexpr double kSqrtPi = 1.77245385090551603;
    auto g = [&](double u) -> std::complex<double> {
        if (u == 0.0) {
            std::complex<double> w = 0.0;
            for (const auto& t : pbg::kernel_terms(m))
                w += t.weight;
            return 2.0 * w / kSqrtPi;
        }
        return 2.0 * u * pbg::kernel_time(m, u * u) * std::exp(-s * (u * u));
    };
    return simpson(g, 0.0, u_max, n);
}

// Panel moments of e^{-i f tau}/sqrt(pi tau) against {1, tau - t1} by the
// same substitution (tau = u^2).
inline std::complex<double> moment0_via_quadrature(double f, double t1, double t2, int n = 20000)
{
    constexpr double kSqrtPi = 1.77245385090551603;
    auto g = [&](double u) -> std::complex<double> {
        return (2.0 / kSqrtPi) * std::exp(std::complex<double>(0.0, -f * u * u));
    };
    return simpson(g, std::sqrt(t1), std::sqrt(t2), n);
}

inline std::complex<double> moment1_via_quadrature(double f, double t1, double t2, int n = 20000)
{
    constexpr double kSqrtPi = 1.77245385090551603;
    auto g = [&](double u) -> std::complex<double> {
        return (2.0 / kSqrtPi) * (u * u - t1) * std::exp(std::complex<double>(0.0, -f * u * u));
    };
    return simpson(g, std::sqrt(t1), std::sqrt(t2), n);
}

} // namespace oracles
