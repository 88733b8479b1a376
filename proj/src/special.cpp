#include "koba/special.hpp"

#include <cmath>
#include <numbers>

namespace koba::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeffs[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

cplx lgamma_lanczos(cplx z) {
  z -= 1.0;
  cplx x = kLanczosCoeffs[0];
  for (int i = 1; i < 9; ++i) x += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma(cplx z) {
  if (z.imag() == 0.0) return std::tgamma(z.real());
  if (z.real() < 0.5)
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma(1.0 - z));
  return std::exp(lgamma_lanczos(z));
}

cplx beta(cplx x, cplx y) { return gamma(x) * gamma(y) / gamma(x + y); }

cplx veneziano_sum(cplx a, cplx b) {
  const cplx c = -a - b - 2.0;
  return beta(a + 1.0, b + 1.0) + beta(a + 1.0, c + 1.0) + beta(b + 1.0, c + 1.0);
}

cplx virasoro_shapiro(cplx a, cplx b) {
  return std::numbers::pi * gamma(1.0 + a) * gamma(1.0 + b) * gamma(-1.0 - a - b) /
         (gamma(-a) * gamma(-b) * gamma(2.0 + a + b));
}

}  // namespace koba::special
