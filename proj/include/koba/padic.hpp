#pragma once

// Koba-Nielsen integrals over Q_p with the normalized Haar measure
// (vol Z_p = 1) and |x|_p = p^{-ord x}.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "koba/eval_result.hpp"
#include "koba/index.hpp"

namespace koba {

bool is_prime(std::int64_t p);

struct PadicParams {
  int p = 3;
  int max_depth = 12;  ///< cluster nesting cap; deeper clusters become tail terms
  SVector s{4};
  std::size_t max_memo = std::size_t{1} << 22;

  /// p prime, max_depth >= 1, max_memo >= 1.
  void validate() const;
};

/// coef * u^u_pow * v^v_pow * w^w_pow
struct MonomialTerm {
  std::int64_t coef = 0;
  int u_pow = 0;
  int v_pow = 0;
  int w_pow = 0;
};

/// Rational form for N = 4 in u = p^{-(a+1)}, v = p^{-(b+1)}, w = p^{a+b+1}:
/// value = numerator(u,v,w) / denominator(u,v,w), integer coefficients.
struct PadicN4Form {
  int p = 0;
  cplx u_exp;  ///< u = p^{u_exp}
  cplx v_exp;
  cplx w_exp;
  std::vector<MonomialTerm> numerator;
  std::vector<MonomialTerm> denominator;

  [[nodiscard]] cplx value() const;
};

/// Shell sum (1-2/p) + (1-1/p)(u/(1-u) + v/(1-v) + w/(1-w)).
/// Throws std::invalid_argument unless p is prime.
EvalResult eval_n4_padic(int p, cplx a, cplx b);

/// Symbolic rational form; throws std::invalid_argument unless p is prime.
PadicN4Form padic_n4_form(int p, cplx a, cplx b);

/// General N by recursion over p-adic clusters of the points
/// {0, 1, infinity, x_2, ..., x_{N-2}}. Each cluster that repeats itself one
/// digit deeper is closed by a geometric series. Sectors are indexed by the
/// set I of coordinates with |x_i| <= 1. Throws resource_limit_error when the
/// memo table exceeds params.max_memo.
EvalResult eval_padic_tree(const PadicParams& params);

/// Integral over Z_p^{N-3} only (the all-unit-ball sector), with no domain
/// check. For s = 0 this is the Haar volume 1.
EvalResult padic_unit_ball(const PadicParams& params);

}  // namespace koba
