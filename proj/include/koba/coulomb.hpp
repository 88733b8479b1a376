#pragma once

// One-dimensional log-Coulomb gas: charges e_1..e_{N-1} with e_1 at the fixed
// site 0, e_{N-1} at the fixed site 1 and e_2..e_{N-2} mobile.

#include <utility>
#include <vector>

#include "koba/domain.hpp"
#include "koba/eval_result.hpp"
#include "koba/real_eval.hpp"

namespace koba {

struct GasSpec {
  int N = 0;
  std::vector<double> charges;  ///< e_1 .. e_{N-1}
  double beta = 0.0;

  /// N >= 4, beta > 0, charges.size() == N-1.
  void validate() const;
};

/// s_1i = beta e_i e_1, s_(N-1)i = beta e_i e_{N-1}, s_ij = beta e_i e_j.
SVector charges_to_s(const GasSpec& g);

struct BetaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Maximal runs of grid points whose exponents are inside the convergence
/// domain, with each run edge refined by bisection against the neighbouring
/// grid point to `edge_tol`. Edges at the first or last grid point are left
/// at the grid value.
std::vector<BetaInterval> beta_window(int N, const std::vector<double>& charges, const std::vector<double>& beta_grid,
                                      double edge_tol = 1e-9);

/// Parses "start:stop:step" (inclusive of stop up to rounding).
std::vector<double> parse_grid(const std::string& spec);

struct PartitionSettings {
  EvalSettings real;  ///< used for R and C
  int p = 3;          ///< used for Qp
  int max_depth = 12;
};

/// Delegates to the field evaluators on charges_to_s(g). For N = 4 over R or
/// C with mode closed the gamma-function forms are used.
EvalResult partition_function(const GasSpec& g, Field field, const PartitionSettings& settings);

}  // namespace koba
