#include "pbg/emission.hpp"

#include <cmath>

#include "pbg/errors.hpp"
#include "pbg/grid.hpp"

namespace pbg {

double emission_at(const EmissionParams& p, double delta)
{
    const std::complex<double> K = kernel_laplace_on_axis(p.reservoir, delta);
    if (is_kernel_divergent(K))
        return 0.0;
    const double re = 0.5 * p.gamma + K.real();
    const double im = -delta + K.imag();
    return p.gamma / (re * re + im * im);
}

EmissionSpectrum spectrum_eval(const EmissionParams& p, Eigen::ArrayXd grid)
{
    if (!(p.gamma > 0.0))
        throw ConfigError("gamma must be positive");
    require_strictly_increasing(grid);
    snap_to_points(grid, band_edges(p.reservoir));

    EmissionSpectrum s;
    s.grid = std::move(grid);
    s.values.resize(s.grid.size());
    for (Eigen::Index i = 0; i < s.grid.size(); ++i)
        s.values[i] = emission_at(p, s.grid[i]);

    const double lo = s.grid[0], hi = s.grid[s.grid.size() - 1];
    for (double e : band_edges(p.reservoir))
        if (e >= lo && e <= hi)
            s.dark_lines.push_back(e);
    s.peaks = find_peaks(s);
    return s;
}

std::vector<double> find_dark_lines(const EmissionSpectrum& spectrum, const EmissionParams& p,
                                    double rel_tol)
{
    if (spectrum.values.size() == 0)
        throw ConfigError("empty spectrum");
    const double smax = spectrum.values.maxCoeff();
    const double bound = rel_tol * smax;

    std::vector<double> edges = band_edges(p.reservoir);
    for (double e : edges) {
        if (emission_at(p, e) != 0.0 || emission_at(p, e + 1e-6) > bound ||
            emission_at(p, e - 1e-6) > bound)
            throw ContractViolation("dark-line contract violated near delta = " + std::to_string(e));
    }

    // No zeros may exist away from the band edges.
    const Eigen::Index n = spectrum.grid.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (spectrum.values[i] > bound)
            continue;
        const double step = (i + 1 < n) ? spectrum.grid[i + 1] - spectrum.grid[i]
                                        : spectrum.grid[i] - spectrum.grid[i - 1];
        bool near_edge = false;
        for (double e : edges)
            near_edge = near_edge || std::abs(spectrum.grid[i] - e) <= 2.0 * step;
        if (!near_edge)
            throw ContractViolation("dark-line contract violated: unexpected zero near delta = " +
                                    std::to_string(spectrum.grid[i]));
    }
    return edges;
}

std::vector<Peak> find_peaks(const EmissionSpectrum& spectrum)
{
    std::vector<Peak> peaks;
    const Eigen::Index n = spectrum.grid.size();
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        const double y0 = spectrum.values[i - 1], y1 = spectrum.values[i], y2 = spectrum.values[i + 1];
        if (!(y1 > y0 && y1 > y2))
            continue;
        const double x0 = spectrum.grid[i - 1], x1 = spectrum.grid[i], x2 = spectrum.grid[i + 1];
        // Newton-form parabola through the three samples.
        const double d1 = (y1 - y0) / (x1 - x0);
        const double d2 = (y2 - y1) / (x2 - x1);
        const double c = (d2 - d1) / (x2 - x0);
        if (c >= 0.0) { // flat or degenerate; keep the sample
            peaks.push_back({x1, y1});
            continue;
        }
        double xs = 0.5 * (x0 + x1) - d1 / (2.0 * c);
        xs = std::min(std::max(xs, x0), x2);
        const double ys = y0 + d1 * (xs - x0) + c * (xs - x0) * (xs - x1);
        peaks.push_back({xs, ys});
    }
    return peaks;
}

} // namespace pbg
