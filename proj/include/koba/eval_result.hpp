#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "koba/index.hpp"

namespace koba {

/// A memo table or work budget was exhausted before the computation closed.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EvalStatus { estimate, diverged_by_domain, boundary };
std::string_view to_string(EvalStatus s);

struct SectorEstimate {
  std::vector<int> subset;  ///< labels i kept un-inverted (the sector I)
  cplx value;
  double std_error = 0.0;
};

/// Outcome of one evaluation. `value` is present iff status == estimate.
struct EvalResult {
  EvalStatus status = EvalStatus::estimate;
  std::optional<cplx> value;
  double std_error = 0.0;   ///< statistical error (Monte Carlo) or quadrature error estimate
  double tail_bound = 0.0;  ///< certified truncation bound (p-adic tree)
  std::vector<SectorEstimate> sectors;

  static EvalResult exact(cplx v) {
    EvalResult r;
    r.value = v;
    return r;
  }
  static EvalResult rejected(EvalStatus s) {
    EvalResult r;
    r.status = s;
    return r;
  }
};

}  // namespace koba
