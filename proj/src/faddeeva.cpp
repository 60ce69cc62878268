#include "pbg/faddeeva.hpp"

namespace pbg {
namespace {

// Weideman rational approximation, N = 40 terms. The coefficients are the
// real Fourier coefficients of exp(-t^2)(L^2+t^2) sampled on t = L tan(theta/2);
// frozen here so the function is table-driven and allocation-free.
// Max relative error ~1e-14 on Im(z) >= 0, uniformly in |z|.
constexpr double kTauL = 5.31829589694498850e+00; // sqrt(N/sqrt(2))

constexpr double kTauCoef[40] = { // polynomial in Z, highest degree first
    -1.73569809987918647e-15,  1.20167491075928095e-15,
     1.15191702207494847e-14, -5.23171636632440398e-15,
    -7.07108802215940845e-14,  1.37782240476640457e-14,
     4.53414489094346555e-13,  1.20333095291956798e-13,
    -2.90771851041427015e-12, -2.72777356258302445e-12,
     1.77141856738671790e-11,  3.47274209389070152e-11,
    -9.05513886095832302e-11, -3.56323504036026841e-10,
     2.10859907312510581e-10,  3.01778042555156406e-09,
     3.24974658294507890e-09, -1.83156168342968342e-08,
    -6.35177348301541098e-08,  1.41986423729534295e-08,
     5.91213695302905726e-07,  1.48356611331720142e-06,
    -1.06601389841627292e-06, -1.80074471447234073e-05,
    -5.59130926423487940e-05, -3.93936314548380510e-05,
     4.39807015986967025e-04,  2.70540563307372899e-03,
     1.00481862427835352e-02,  2.92029164712418812e-02,
     7.18236177907432827e-02,  1.55042638024795038e-01,
     2.99894379961500590e-01,  5.26652898827708604e-01,
     8.47217457659381501e-01,  1.25638156757651331e+00,
     1.72538308481797786e+00,  2.20151379487831189e+00,
     2.61605415276185971e+00,  2.89962450938970484e+00,
};

constexpr double kInvSqrtPi = 5.64189583547756287e-01;

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z)
{
    const std::complex<double> iz(-z.imag(), z.real());
    const std::complex<double> d = kTauL - iz;
    const std::complex<double> Z = (kTauL + iz) / d;
    std::complex<double> p = kTauCoef[0];
    for (int k = 1; k < 40; ++k)
        p = p * Z + kTauCoef[k];
    return 2.0 * p / (d * d) + kInvSqrtPi / d;
}

} // namespace pbg
