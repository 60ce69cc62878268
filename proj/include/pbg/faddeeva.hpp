#pragma once

#include <complex>

namespace pbg {

// Scaled complementary error function w(z) = exp(-z^2) * erfc(-i z),
// valid for Im(z) >= 0. Relative accuracy ~1e-14 over the closed upper
// half plane, uniformly in |z|.
std::complex<double> faddeeva_w(std::complex<double> z);

} // namespace pbg
