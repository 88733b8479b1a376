#include "koba/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "koba/domain.hpp"
#include "koba/rng.hpp"

namespace koba {

void MomentumConfig::validate() const {
  if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
  if (l < 1) throw std::invalid_argument("l must be >= 1, got " + std::to_string(l));
  const auto count = static_cast<int>(vectors.size());
  if (count != N && count != N - 1)
    throw std::invalid_argument("expected " + std::to_string(N) + " (or N-1) momentum vectors, got " +
                                std::to_string(count));
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != l + 1)
      throw std::invalid_argument("momentum vector of length " + std::to_string(v.size()) +
                                  ", expected l+1 = " + std::to_string(l + 1));
}

cplx minkowski_product(const MomentumVector& a, const MomentumVector& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("minkowski_product: length mismatch");
  cplx acc = -a[0] * b[0];
  for (std::size_t m = 1; m < a.size(); ++m) acc += a[m] * b[m];
  return acc;
}

SVector momentum_to_s(const MomentumConfig& cfg) {
  cfg.validate();
  SVector s(cfg.N);
  const IndexSet& idx = s.index_set();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const PairIndex& p = idx[k];
    s[k] = minkowski_product(cfg.vectors[p.i - 1], cfg.vectors[p.j - 1]);
  }
  return s;
}

namespace {

MomentumVector completed_last(const MomentumConfig& cfg) {
  MomentumVector last(cfg.l + 1, 0.0);
  for (int i = 0; i < cfg.N - 1; ++i)
    for (int m = 0; m <= cfg.l; ++m) last[m] -= cfg.vectors[i][m];
  return last;
}

}  // namespace

KinematicsReport check_kinematics(const MomentumConfig& cfg, double tol) {
  cfg.validate();
  std::vector<MomentumVector> vecs = cfg.vectors;
  if (static_cast<int>(vecs.size()) == cfg.N - 1) vecs.push_back(completed_last(cfg));

  KinematicsReport rep;
  double sq = 0.0;
  for (int m = 0; m <= cfg.l; ++m) {
    cplx sum = 0.0;
    for (const auto& v : vecs) sum += v[m];
    sq += std::norm(sum);
  }
  rep.conservation_residual = std::sqrt(sq);
  rep.pass = rep.conservation_residual <= tol;
  for (const auto& v : vecs) {
    const double r = std::abs(minkowski_product(v, v) - 2.0);
    rep.mass_shell_residuals.push_back(r);
    if (!(r <= tol)) rep.pass = false;
  }
  return rep;
}

MomentumConfig build_prop3(int N, int l) {
  if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
  if (N > l + 1)
    throw unsupported_error("build_prop3 requires N <= l+1 (got N=" + std::to_string(N) +
                            ", l=" + std::to_string(l) + ")");
  MomentumConfig cfg{N, l, {}};
  const double t = std::sqrt(2.0 / (N - 1));
  const double r = std::sqrt(2.0 * N / (N - 1));
  for (int i = 1; i <= N - 1; ++i) {
    MomentumVector v(l + 1, 0.0);
    v[0] = t;
    v[i] = r;
    cfg.vectors.push_back(std::move(v));
  }
  cfg.vectors.push_back(completed_last(cfg));
  return cfg;
}

MomentumConfig build_equidistributed(int N) {
  if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
  MomentumConfig cfg{N, 2, {}};
  const cplx root_m2(0.0, std::sqrt(2.0));
  const double norm = std::sqrt(2.0 * N * (N - 2)) / (N - 1);
  for (int i = 1; i <= N - 1; ++i) {
    const double angle = 2.0 * std::numbers::pi * (i - 1) / (N - 1);
    cfg.vectors.push_back({root_m2 / static_cast<double>(N - 1), norm * std::cos(angle), norm * std::sin(angle)});
  }
  cfg.vectors.push_back({-root_m2, 0.0, 0.0});
  return cfg;
}

void UBoxParams::validate() const {
  if (N < 4) throw std::invalid_argument("U box: N must be >= 4");
  if (l < 1) throw std::invalid_argument("U box: l must be >= 1");
  if (!(B > 0.0 && B < C && C < 1.0 / (N - 2)))
    throw std::invalid_argument("U box: need 0 < B < C < 1/(N-2)");
  if (std::abs((C - B) - 1.0 / N) > 1e-12) throw std::invalid_argument("U box: need C - B = 1/N");
}

UBoxParams UBoxParams::defaults(int N, int l) {
  UBoxParams p{N, l, 1.0 / (N * (N - 2.0)), 0.0};
  p.C = p.B + 1.0 / N;
  p.validate();
  return p;
}

std::vector<MomentumConfig> sample_U(const UBoxParams& p, std::uint64_t seed, int count) {
  p.validate();
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  const double re0_lo = std::sqrt(p.C), re0_hi = std::sqrt(1.0 / (p.N - 2));
  const double im0_hi = std::sqrt(p.B);
  const double rem_hi = std::sqrt(p.B / p.l);
  const double imm_lo = std::sqrt(p.C / p.l), imm_hi = std::sqrt(1.0 / (p.l * (p.N - 2.0)));

  std::vector<MomentumConfig> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (count > 256)
  for (int c = 0; c < count; ++c) {
    CounterRng rng(stream_key(seed, static_cast<std::uint64_t>(c)));
    MomentumConfig cfg{p.N, p.l, {}};
    for (int i = 0; i < p.N - 1; ++i) {
      MomentumVector v(p.l + 1);
      const double re0 = rng.uniform(re0_lo, re0_hi);
      v[0] = {re0, rng.uniform(0.0, im0_hi)};
      for (int m = 1; m <= p.l; ++m) {
        const double re = rng.uniform(0.0, rem_hi);
        v[m] = {re, rng.uniform(imm_lo, imm_hi)};
      }
      cfg.vectors.push_back(std::move(v));
    }
    out[static_cast<std::size_t>(c)] = std::move(cfg);
  }
  return out;
}

std::string_view to_string(Scattering s) {
  switch (s) {
    case Scattering::feasible: return "feasible";
    case Scattering::outside_domain: return "outside-domain";
    case Scattering::on_pole: return "on-pole";
    case Scattering::constraint_violated: return "constraint-violated";
  }
  return "?";
}

Scattering scattering_feasible(const MomentumConfig& cfg, double tol) {
  if (!check_kinematics(cfg, tol).pass) return Scattering::constraint_violated;
  const SVector s = momentum_to_s(cfg);
  if (box_contains(cfg.N, s)) return Scattering::feasible;
  if (!is_on_pole(s, Field::R, 2 * cfg.N, 1e-9).empty()) return Scattering::on_pole;
  return Scattering::outside_domain;
}

}  // namespace koba
