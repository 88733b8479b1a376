#pragma once

// Evaluation of Koba-Nielsen integrals over R and C at points of convergence:
// gamma-function closed forms for N = 4, double-exponential quadrature for
// N = 4, and a sector-decomposed Monte Carlo estimator for general N.

#include <cstdint>
#include <vector>

#include "koba/domain.hpp"
#include "koba/eval_result.hpp"

namespace koba {

enum class EvalMode { mc, quadrature, closed };
std::string_view to_string(EvalMode m);
EvalMode parse_mode(std::string_view s);

/// Serial is the reference path; both produce bit-identical results.
enum class Backend { openmp, serial };

struct EvalSettings {
  std::int64_t samples_per_sector = 1'000'000;
  int groups = 32;  ///< median-of-means group count
  std::uint64_t seed = 1;
  EvalMode mode = EvalMode::mc;
  double chi_epsilon = 0.1;
  Backend backend = Backend::openmp;

  /// samples_per_sector >= groups >= 1 and 0 < chi_epsilon < 1.
  void validate() const;
};

/// Smooth cutoff: 1 on [-2,2], 0 outside [-2-eps, 2+eps], C-infinity between.
double chi(double x, double eps);

/// Domain status for N = 4 from the three conditions Re a > -1, Re b > -1,
/// Re(a+b) < -1.
Membership n4_status(cplx a, cplx b, double tol = kDefaultMembershipTol);

/// Veneziano gamma-sum; a = s12, b = s32.
EvalResult eval_n4_closed_real(cplx a, cplx b);
/// Planar-Lebesgue normalization: integral of |z|^{2a}|1-z|^{2b} dx dy.
EvalResult eval_n4_closed_complex(cplx a, cplx b);

/// N = 4 by tanh-sinh quadrature. R: panels split at -1, 0, 1/2, 1 with the
/// tails folded by x -> 1/x. C: polar coordinates around 0 with the outer
/// region folded by z -> 1/z.
EvalResult eval_quadrature_n4(cplx a, cplx b, Field field = Field::R);

/// Truncated N = 4 integral over |x| <= cutoff (quadrature; no domain check).
cplx truncated_n4(cplx a, cplx b, Field field, double cutoff);

/// Sector-decomposed Monte Carlo for N >= 4, field R or C.
EvalResult eval_mc(const SVector& s, Field field, const EvalSettings& settings);

/// Dispatch on settings.mode (closed and quadrature need N = 4).
EvalResult evaluate(const SVector& s, Field field, const EvalSettings& settings);

struct GrowthProbe {
  std::vector<double> cutoffs;
  std::vector<cplx> estimates;
  /// kappa in  I(R) ~ A + B R^kappa, fitted to log|I(R_{k+1}) - I(R_k)|.
  /// Positive kappa is a divergence witness.
  double growth_exponent = 0.0;
  /// Least-squares slope of log|I(R)| against log R; near 0 when convergent.
  double log_slope = 0.0;
};

/// Truncated integrals over {|x_i| <= cutoff}. N = 4 uses quadrature; N >= 5
/// uses Monte Carlo with `settings`. Needs >= 3 increasing cutoffs.
GrowthProbe growth_probe(const SVector& s, Field field, const std::vector<double>& cutoffs,
                         const EvalSettings& settings = {});

}  // namespace koba
