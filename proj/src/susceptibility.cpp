#include "pbg/susceptibility.hpp"

#include <algorithm>
#include <cmath>

#include "pbg/errors.hpp"
#include "pbg/grid.hpp"

namespace pbg {
namespace {

// Second-order first derivative on a possibly non-uniform grid (3-point
// stencil, one-sided at the ends).
Eigen::ArrayXd sampled_slope(const Eigen::ArrayXd& x, const Eigen::ArrayXd& f)
{
    const Eigen::Index n = x.size();
    Eigen::ArrayXd d(n);
    if (n == 1) {
        d[0] = 0.0;
        return d;
    }
    if (n == 2) {
        d[0] = d[1] = (f[1] - f[0]) / (x[1] - x[0]);
        return d;
    }
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        const double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
        d[i] = (-hr / hl * f[i - 1] + (hr / hl - hl / hr) * f[i] + hl / hr * f[i + 1]) / (hl + hr);
    }
    {
        const double h1 = x[1] - x[0], h2 = x[2] - x[1];
        d[0] = (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) * f[0] + ((h1 + h2) / (h1 * h2)) * f[1] -
               (h1 / (h2 * (h1 + h2))) * f[2];
    }
    {
        const double h1 = x[n - 1] - x[n - 2], h2 = x[n - 2] - x[n - 3];
        d[n - 1] = ((2.0 * h1 + h2) / (h1 * (h1 + h2))) * f[n - 1] -
                   ((h1 + h2) / (h1 * h2)) * f[n - 2] + (h1 / (h2 * (h1 + h2))) * f[n - 3];
    }
    return d;
}

} // namespace

std::complex<double> chi_at(const ProbeParams& p, double delta)
{
    const std::complex<double> K = kernel_laplace_on_axis(p.reservoir, delta);
    if (is_kernel_divergent(K))
        return {0.0, 0.0};
    const std::complex<double> denom(delta - K.imag(), -0.5 * p.gamma - K.real());
    return -p.chi0 / denom;
}

std::complex<double> chi_slope_analytic(const ProbeParams& p, double delta)
{
    const std::complex<double> K = kernel_laplace_on_axis(p.reservoir, delta);
    if (is_kernel_divergent(K))
        throw ContractViolation("band-edge divergence");
    const std::complex<double> dK = kernel_laplace_ds(p.reservoir, {0.0, -delta});
    const std::complex<double> D(delta - K.imag(), -0.5 * p.gamma - K.real());
    const std::complex<double> Dp = 1.0 + std::conj(dK);
    return p.chi0 * Dp / (D * D);
}

ProbeResponse chi_eval(const ProbeParams& p, Eigen::ArrayXd grid)
{
    if (!(p.gamma > 0.0))
        throw ConfigError("gamma must be positive");
    if (!(p.chi0 > 0.0))
        throw ConfigError("chi0 must be positive");
    require_strictly_increasing(grid);
    snap_to_points(grid, band_edges(p.reservoir));

    ProbeResponse r;
    r.grid = std::move(grid);
    const Eigen::Index n = r.grid.size();
    r.chi.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        r.chi[i] = chi_at(p, r.grid[i]);
    r.absorption = -r.chi.imag();
    r.dispersion = r.chi.real();
    r.slope = sampled_slope(r.grid, r.dispersion);

    const double lo = r.grid[0], hi = r.grid[n - 1];
    for (double e : band_edges(p.reservoir))
        if (e >= lo && e <= hi)
            r.transparency_points.push_back(e);
    return r;
}

std::vector<double> transparency_windows(const ProbeResponse& response, const ProbeParams& p,
                                         double rel_tol)
{
    if (response.chi.size() == 0)
        throw ConfigError("empty response");
    const double cmax = response.chi.abs().maxCoeff();
    const double bound = rel_tol * cmax;

    std::vector<double> edges = band_edges(p.reservoir);
    for (double e : edges) {
        if (std::abs(chi_at(p, e)) != 0.0 || std::abs(chi_at(p, e + 1e-6)) > bound ||
            std::abs(chi_at(p, e - 1e-6)) > bound)
            throw ContractViolation("transparency contract violated near delta = " +
                                    std::to_string(e));
    }
    return edges;
}

std::vector<std::pair<double, double>> group_slope_report(const ProbeResponse& response)
{
    std::vector<std::pair<double, double>> out;
    const Eigen::Index n = response.grid.size();
    for (double p : response.transparency_points) {
        const double* begin = response.grid.data();
        Eigen::Index i = std::lower_bound(begin, begin + n, p) - begin;
        if (i == n) i = n - 1;
        if (i > 0 && p - response.grid[i - 1] < response.grid[i] - p)
            --i;
        out.emplace_back(p, response.slope[i]);
    }
    return out;
}

} // namespace pbg
