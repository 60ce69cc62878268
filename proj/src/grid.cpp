#include "pbg/grid.hpp"

#include <algorithm>
#include <cmath>

#include "pbg/errors.hpp"

namespace pbg {

Eigen::ArrayXd uniform_grid(double lo, double hi, int n)
{
    if (n < 2)
        throw ConfigError("grid needs at least 2 points");
    if (!(lo < hi))
        throw ConfigError("grid range must satisfy min < max");
    return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

void require_strictly_increasing(const Eigen::ArrayXd& grid)
{
    if (grid.size() == 0)
        throw ConfigError("empty grid");
    for (Eigen::Index i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("grid must be strictly increasing");
}

void snap_to_points(Eigen::ArrayXd& grid, const std::vector<double>& targets)
{
    const Eigen::Index n = grid.size();
    if (n < 2)
        return;
    for (double p : targets) {
        if (p < grid[0] || p > grid[n - 1])
            continue;
        const double* begin = grid.data();
        Eigen::Index i = std::lower_bound(begin, begin + n, p) - begin; // first >= p
        if (i == n) i = n - 1;
        if (i > 0 && p - grid[i - 1] < grid[i] - p)
            --i;
        const double left = (i > 0) ? grid[i] - grid[i - 1] : grid[i + 1] - grid[i];
        const double right = (i < n - 1) ? grid[i + 1] - grid[i] : left;
        if (std::abs(grid[i] - p) <= 0.5 * std::min(left, right) * (1.0 + 1e-12))
            grid[i] = p;
    }
    require_strictly_increasing(grid);
}

} // namespace pbg
