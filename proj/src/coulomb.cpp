#include "koba/coulomb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "koba/padic.hpp"

namespace koba {

void GasSpec::validate() const {
  if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
  if (static_cast<int>(charges.size()) != N - 1)
    throw std::invalid_argument("expected N-1 = " + std::to_string(N - 1) + " charges, got " +
                                std::to_string(charges.size()));
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be a positive finite number");
}

SVector charges_to_s(const GasSpec& g) {
  g.validate();
  SVector s(g.N);
  const IndexSet& idx = s.index_set();
  auto e = [&](int label) { return g.charges[static_cast<std::size_t>(label - 1)]; };
  for (std::size_t k = 0; k < idx.size(); ++k) s[k] = g.beta * e(idx[k].i) * e(idx[k].j);
  return s;
}

namespace {

bool inside_at(int N, const std::vector<double>& charges, double beta) {
  if (!(beta > 0.0)) return false;
  return domain_status(charges_to_s({N, charges, beta})) == Membership::inside;
}

/// in_at_a != in_at_b; returns the transition point.
double bisect(int N, const std::vector<double>& charges, double a, double b, double tol) {
  const bool in_a = inside_at(N, charges, a);
  while (std::abs(b - a) > tol) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    if (inside_at(N, charges, mid) == in_a)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<BetaInterval> beta_window(int N, const std::vector<double>& charges, const std::vector<double>& beta_grid,
                                      double edge_tol) {
  if (beta_grid.empty()) throw std::invalid_argument("beta grid is empty");
  for (std::size_t k = 0; k < beta_grid.size(); ++k) {
    if (!(beta_grid[k] > 0.0)) throw std::invalid_argument("beta grid values must be positive");
    if (k > 0 && !(beta_grid[k] > beta_grid[k - 1])) throw std::invalid_argument("beta grid must be increasing");
  }
  GasSpec probe{N, charges, beta_grid.front()};
  probe.validate();

  const auto count = static_cast<std::ptrdiff_t>(beta_grid.size());
  std::vector<char> in(beta_grid.size());
#pragma omp parallel for schedule(static) if (count > 1024)
  for (std::ptrdiff_t k = 0; k < count; ++k)
    in[static_cast<std::size_t>(k)] = inside_at(N, charges, beta_grid[static_cast<std::size_t>(k)]);

  std::vector<BetaInterval> out;
  std::size_t k = 0;
  while (k < beta_grid.size()) {
    if (!in[k]) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end + 1 < beta_grid.size() && in[end + 1]) ++end;
    BetaInterval iv{beta_grid[k], beta_grid[end]};
    if (k > 0) iv.lo = bisect(N, charges, beta_grid[k - 1], beta_grid[k], edge_tol);
    if (end + 1 < beta_grid.size()) iv.hi = bisect(N, charges, beta_grid[end], beta_grid[end + 1], edge_tol);
    out.push_back(iv);
    k = end + 1;
  }
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid must be start:stop:step, got '" + spec + "'");
  double start = 0, stop = 0, step = 0;
  try {
    start = std::stod(spec.substr(0, c1));
    stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(spec.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be start:stop:step, got '" + spec + "'");
  }
  if (!(step > 0.0) || !(stop >= start)) throw std::invalid_argument("grid needs step > 0 and stop >= start");
  const auto n = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 10'000'000) throw std::invalid_argument("grid has too many points");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

EvalResult partition_function(const GasSpec& g, Field field, const PartitionSettings& settings) {
  const SVector s = charges_to_s(g);
  if (field == Field::Qp) {
    if (g.N == 4) return eval_n4_padic(settings.p, s[0], s[1]);
    PadicParams prm;
    prm.p = settings.p;
    prm.max_depth = settings.max_depth;
    prm.s = s;
    return eval_padic_tree(prm);
  }
  return evaluate(s, field, settings.real);
}

}  // namespace koba
