#pragma once

// Double-exponential (tanh-sinh) quadrature for integrands with algebraic
// endpoint singularities.
//
// The integrand is passed split as (x-a)^p (b-x)^q g(x); the two powers are
// applied in log space, so exponents close to -1 are integrated without the
// truncation loss that comes from the endpoint distance underflowing.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace koba::quad {

using cplx = std::complex<double>;

struct DeOptions {
  double rel_tol = 1e-12;
  int min_level = 3;
  int max_level = 8;
  double t_max = 12.0;
};

struct DeResult {
  cplx value;
  double error = 0.0;  ///< difference between the last two levels
  int level = 0;
};

namespace detail {

inline double softplus(double u) { return u > 0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

/// One node of the tanh-sinh rule on [a,b]. G is called as g(x, dl, dr)
/// with dl = x-a and dr = b-x computed without cancellation.
template <class G>
cplx node(G& g, double a, double b, cplx p, cplx q, double t) {
  const double w = b - a;
  const double u = std::numbers::pi * std::sinh(t);
  const double log_w = std::log(w);
  const double sp_neg = softplus(-u);
  const double sp_pos = softplus(u);
  const double log_dl = log_w - sp_neg;
  const double log_dr = log_w - sp_pos;
  const double log_jac = log_w - sp_neg - sp_pos + std::log(std::numbers::pi * std::cosh(t));
  const cplx log_mag = log_jac + p * log_dl + q * log_dr;
  if (log_mag.real() < -745.0) return 0.0;
  const double dl = std::exp(log_dl);
  const double dr = std::exp(log_dr);
  const double x = dl <= dr ? a + dl : b - dr;
  return std::exp(log_mag) * g(x, dl, dr);
}

}  // namespace detail

/// Integral over [a,b] of (x-a)^p (b-x)^q g(x, x-a, b-x).
template <class G>
DeResult tanh_sinh(G&& g, double a, double b, cplx p = 0.0, cplx q = 0.0, const DeOptions& opt = {}) {
  // Level 0 fixes the truncation window; finer levels add the odd nodes.
  double h = 0.5;
  cplx sum = detail::node(g, a, b, p, q, 0.0);
  double t_lo = 0.0;
  double t_hi = 0.0;
  for (int dir : {-1, 1}) {
    int small = 0;
    for (int k = 1;; ++k) {
      const double t = dir * k * h;
      if (std::abs(t) > opt.t_max) break;
      const cplx v = detail::node(g, a, b, p, q, t);
      sum += v;
      (dir < 0 ? t_lo : t_hi) = t;
      small = std::abs(v) <= 1e-20 * std::abs(sum) ? small + 1 : 0;
      if (small >= 3) break;
    }
  }
  DeResult res;
  cplx estimate = h * sum;
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    cplx added = 0.0;
    const long intervals = std::lround((t_hi - t_lo) / (2 * h));
    for (long m = 0; m < intervals; ++m)
      added += detail::node(g, a, b, p, q, t_lo + static_cast<double>(2 * m + 1) * h);
    sum += added;
    const cplx next = h * sum;
    res.error = std::abs(next - estimate);
    res.level = level;
    estimate = next;
    if (level >= opt.min_level && res.error <= opt.rel_tol * std::abs(estimate)) break;
  }
  res.value = estimate;
  return res;
}

}  // namespace koba::quad
