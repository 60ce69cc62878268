#pragma once

#include <vector>

#include <Eigen/Dense>

namespace pbg {

// n evenly spaced points on [lo, hi]; n >= 2, lo < hi.
Eigen::ArrayXd uniform_grid(double lo, double hi, int n);

// Move the grid point nearest each target onto it, when the target lies
// within half a local step. Keeps the grid strictly increasing; used so that
// band edges appear exactly in sampled spectra.
void snap_to_points(Eigen::ArrayXd& grid, const std::vector<double>& targets);

void require_strictly_increasing(const Eigen::ArrayXd& grid);

} // namespace pbg
