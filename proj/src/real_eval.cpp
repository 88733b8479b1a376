#include "koba/real_eval.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "koba/quadrature.hpp"
#include "koba/rng.hpp"
#include "koba/special.hpp"

namespace koba {

std::string_view to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::estimate: return "estimate";
    case EvalStatus::diverged_by_domain: return "diverged_by_domain";
    case EvalStatus::boundary: return "boundary";
  }
  return "?";
}

std::string_view to_string(EvalMode m) {
  switch (m) {
    case EvalMode::mc: return "mc";
    case EvalMode::quadrature: return "quadrature";
    case EvalMode::closed: return "closed";
  }
  return "?";
}

EvalMode parse_mode(std::string_view s) {
  if (s == "mc") return EvalMode::mc;
  if (s == "quadrature") return EvalMode::quadrature;
  if (s == "closed") return EvalMode::closed;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected mc, quadrature or closed)");
}

void EvalSettings::validate() const {
  if (groups < 1) throw std::invalid_argument("groups must be >= 1");
  if (samples_per_sector < groups) throw std::invalid_argument("samples_per_sector must be >= groups");
  if (!(chi_epsilon > 0.0 && chi_epsilon < 1.0)) throw std::invalid_argument("chi_epsilon must lie in (0,1)");
}

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

EvalStatus as_eval_status(Membership m) {
  return m == Membership::outside ? EvalStatus::diverged_by_domain : EvalStatus::boundary;
}

cplx pow_pos(double x, cplx e) { return std::exp(e * std::log(x)); }

}  // namespace

double chi(double x, double eps) {
  const double ax = std::abs(x);
  if (ax <= 2.0) return 1.0;
  if (ax >= 2.0 + eps) return 0.0;
  return 1.0 - smooth_step((ax - 2.0) / eps);
}

Membership n4_status(cplx a, cplx b, double tol) {
  return domain_status(SVector(4, {a, b}), tol);
}

EvalResult eval_n4_closed_real(cplx a, cplx b) {
  const Membership m = n4_status(a, b);
  if (m != Membership::inside) return EvalResult::rejected(as_eval_status(m));
  return EvalResult::exact(special::veneziano_sum(a, b));
}

EvalResult eval_n4_closed_complex(cplx a, cplx b) {
  const Membership m = n4_status(a, b);
  if (m != Membership::inside) return EvalResult::rejected(as_eval_status(m));
  return EvalResult::exact(special::virasoro_shapiro(a, b));
}

// ---------------------------------------------------------------------------
// N = 4 quadrature

namespace {

constexpr quad::DeOptions kOuterOpts{1e-13, 3, 8, 12.0};
constexpr quad::DeOptions kInnerOpts{1e-12, 3, 7, 12.0};

struct Acc {
  cplx value;
  double error = 0.0;
  void add(const quad::DeResult& r) {
    value += r.value;
    error += r.error;
  }
};

/// Real line, optionally truncated to |x| <= cutoff (cutoff > 1).
Acc real_line_n4(cplx a, cplx b, double cutoff) {
  const cplx c = -a - b - 2.0;
  Acc acc;
  acc.add(quad::tanh_sinh([&](double x, double, double) { return pow_pos(1.0 - x, b); }, 0.0, 0.5, a, 0.0, kOuterOpts));
  acc.add(quad::tanh_sinh([&](double x, double, double) { return pow_pos(x, a); }, 0.5, 1.0, 0.0, b, kOuterOpts));
  acc.add(quad::tanh_sinh([&](double x, double, double) { return pow_pos(1.0 - x, b); }, -1.0, 0.0, 0.0, a, kOuterOpts));
  if (std::isinf(cutoff)) {
    // x = -1/y and x = 1/y, y in (0,1]
    acc.add(quad::tanh_sinh([&](double y, double, double) { return pow_pos(1.0 + y, b); }, 0.0, 1.0, c, 0.0, kOuterOpts));
    acc.add(quad::tanh_sinh([](double, double, double) { return cplx(1.0); }, 0.0, 1.0, c, b, kOuterOpts));
  } else {
    const double lo = 1.0 / cutoff;
    acc.add(quad::tanh_sinh([&](double y, double, double) { return pow_pos(y, c) * pow_pos(1.0 + y, b); }, lo, 1.0, 0.0, 0.0, kOuterOpts));
    acc.add(quad::tanh_sinh([&](double y, double, double) { return pow_pos(y, c); }, lo, 1.0, 0.0, b, kOuterOpts));
  }
  return acc;
}

/// Angular average  int_0^{2pi} |1 - rho e^{i theta}|^{2b} d theta, with
/// delta = 1 - rho passed separately to keep it accurate near rho = 1.
cplx angular_factor(cplx b, double rho, double delta) {
  delta = std::max(delta, 1e-100);
  const double d2 = delta * delta;
  auto g = [&](double theta, double, double) {
    const double sh = std::sin(0.5 * theta);
    return std::exp(b * std::log(d2 + 4.0 * rho * sh * sh));
  };
  return 2.0 * quad::tanh_sinh(g, 0.0, std::numbers::pi, 0.0, 0.0, kInnerOpts).value;
}

/// Complex plane in polar form; |z| > 1 is folded onto (0,1) by z -> 1/z.
Acc plane_n4(cplx a, cplx b, double cutoff) {
  const cplx c = -a - b - 2.0;
  auto ang = [&](double rho, double, double dr) { return angular_factor(b, rho, dr); };
  Acc acc;
  acc.add(quad::tanh_sinh(ang, 0.0, 1.0, 2.0 * a + 1.0, 0.0, kOuterOpts));
  if (std::isinf(cutoff)) {
    acc.add(quad::tanh_sinh(ang, 0.0, 1.0, 2.0 * c + 1.0, 0.0, kOuterOpts));
  } else {
    auto folded = [&](double rho, double, double dr) { return pow_pos(rho, 2.0 * c + 1.0) * angular_factor(b, rho, dr); };
    acc.add(quad::tanh_sinh(folded, 1.0 / cutoff, 1.0, 0.0, 0.0, kOuterOpts));
  }
  return acc;
}

}  // namespace

EvalResult eval_quadrature_n4(cplx a, cplx b, Field field) {
  if (field == Field::Qp) throw std::invalid_argument("quadrature is defined for R and C only");
  const Membership m = n4_status(a, b);
  if (m != Membership::inside) return EvalResult::rejected(as_eval_status(m));
  const double inf = std::numeric_limits<double>::infinity();
  const Acc acc = field == Field::R ? real_line_n4(a, b, inf) : plane_n4(a, b, inf);
  EvalResult r = EvalResult::exact(acc.value);
  r.std_error = acc.error;
  return r;
}

cplx truncated_n4(cplx a, cplx b, Field field, double cutoff) {
  if (!(cutoff > 1.0)) throw std::invalid_argument("truncation cutoff must exceed 1");
  if (field == Field::Qp) throw std::invalid_argument("truncated integrals are defined for R and C only");
  return field == Field::R ? real_line_n4(a, b, cutoff).value : plane_n4(a, b, cutoff).value;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

constexpr int kMaxComponents = 40;
constexpr double kPowerRadius = 0.5;
constexpr double kUniformShare = 0.2;
constexpr double kAlphaFloor = -1.0 + 1e-12;

double log_sum_exp(const double* v, int n) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) m = std::max(m, v[i]);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::exp(v[i] - m);
  return m + std::log(acc);
}

// Power-law draws keep log|u - center| exactly, since the offset itself may
// round away against the center or underflow when alpha is close to -1.
template <bool Complex>
struct Geometry;

template <>
struct Geometry<false> {
  using Point = double;
  static constexpr double kFieldPower = 1.0;  ///< log|u|_F = kFieldPower * log|u|
  static double dist(double u, double c) { return std::abs(u - c); }
  static double chi_arg(double u) { return std::abs(u); }
  static double log_uniform_density(double L) { return std::log(0.5 / L); }
  static double draw_uniform(CounterRng& rng, double L) { return rng.uniform(-L, L); }
  static double log_power_density(double log_r, double h, double alpha) {
    return std::log(0.5 * (alpha + 1.0)) + alpha * log_r - (alpha + 1.0) * std::log(h);
  }
  static double draw_log_radius(CounterRng& rng, double h, double alpha) {
    return std::log(h) + std::log(rng.uniform()) / (alpha + 1.0);
  }
  static double place(CounterRng& rng, double center, double log_r) {
    const double r = std::exp(log_r);
    return rng.uniform() < 0.5 ? center - r : center + r;
  }
  static double log_shell_density(double r, double lo, double hi) {
    return std::log(0.5 / (r * std::log(hi / lo)));
  }
  static double draw_shell(CounterRng& rng, double lo, double hi) {
    const double r = lo * std::exp(rng.uniform() * std::log(hi / lo));
    return rng.uniform() < 0.5 ? -r : r;
  }
  static double invert(double u) { return 1.0 / u; }
};

template <>
struct Geometry<true> {
  using Point = cplx;
  static constexpr double kFieldPower = 2.0;
  static double dist(cplx u, cplx c) { return std::abs(u - c); }
  /// chi acts on |z|_C = |z|^2
  static double chi_arg(cplx u) { return std::norm(u); }
  static double log_uniform_density(double L) { return -std::log(std::numbers::pi * L * L); }
  static cplx polar(CounterRng& rng, cplx center, double r) {
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    return center + std::polar(r, th);
  }
  static cplx draw_uniform(CounterRng& rng, double L) { return polar(rng, 0.0, L * std::sqrt(rng.uniform())); }
  static double log_power_density(double log_r, double h, double alpha) {
    const double k = 2.0 * alpha + 2.0;
    return std::log(k / (2.0 * std::numbers::pi)) + 2.0 * alpha * log_r - k * std::log(h);
  }
  static double draw_log_radius(CounterRng& rng, double h, double alpha) {
    return std::log(h) + std::log(rng.uniform()) / (2.0 * alpha + 2.0);
  }
  static cplx place(CounterRng& rng, cplx center, double log_r) { return polar(rng, center, std::exp(log_r)); }
  static double log_shell_density(double r, double lo, double hi) {
    return -std::log(2.0 * std::numbers::pi * r * r * std::log(hi / lo));
  }
  static cplx draw_shell(CounterRng& rng, double lo, double hi) {
    return polar(rng, 0.0, lo * std::exp(rng.uniform() * std::log(hi / lo)));
  }
  static cplx invert(cplx u) { return 1.0 / u; }
};

struct CoordPlan {
  bool inverted = false;  ///< coordinate stands for 1/x_i
  double radius = 0.0;    ///< support radius in |u| (not |u|_F)
  cplx e_zero;            ///< exponent of |u|_F
  cplx e_one;             ///< exponent of |1-u|_F
  bool one_in_support = false;
  bool sharp = false;     ///< indicator cutoff instead of chi (truncated integrals)
  bool shell = false;     ///< add a log-uniform radial component
};

/// One sector I of the partition of unity, in the coordinates u_i = x_i
/// (i in I) and u_i = 1/x_i (i not in I).
struct SectorPlan {
  std::uint32_t mask = 0;
  int n = 0;
  std::vector<CoordPlan> coords;
  std::vector<cplx> pair;  ///< n*n, s_ij between mobile labels
  double eps = 0.1;

  [[nodiscard]] cplx pair_exp(int j, int k) const { return pair[static_cast<std::size_t>(j * n + k)]; }
};

double alpha_for(cplx e) { return std::max(e.real(), kAlphaFloor); }

SectorPlan make_sector(const SVector& s, std::uint32_t mask, Field field, double eps) {
  const IndexSet& idx = s.index_set();
  const int n = idx.n_mobile();
  SectorPlan plan;
  plan.mask = mask;
  plan.n = n;
  plan.eps = eps;
  plan.pair.assign(static_cast<std::size_t>(n * n), 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) plan.pair[static_cast<std::size_t>(j * n + k)] = s[idx.pos_mobile(j + 2, k + 2)];

  const bool cx = field == Field::C;
  for (int k = 0; k < n; ++k) {
    const int label = k + 2;
    CoordPlan c;
    c.inverted = ((mask >> k) & 1u) == 0;
    const cplx s0 = s[idx.pos_zero(label)];
    const cplx s1 = s[idx.pos_one(label)];
    c.e_one = s1;
    if (c.inverted) {
      cplx total = s0 + s1 + 2.0;
      for (int j = 0; j < n; ++j)
        if (j != k) total += plan.pair_exp(j, k);
      c.e_zero = -total;
      // |u|_F <= 1/2 ; chi~ vanishes once |1/u|_F <= 2
      c.radius = cx ? std::sqrt(0.5) : 0.5;
      c.one_in_support = false;
    } else {
      c.e_zero = s0;
      c.radius = cx ? std::sqrt(2.0 + eps) : 2.0 + eps;
      c.one_in_support = true;
    }
    plan.coords.push_back(c);
  }
  return plan;
}

/// Whole space truncated to |x_i| <= cutoff, no inversion.
SectorPlan make_truncated(const SVector& s, Field field, double cutoff) {
  SectorPlan plan = make_sector(s, (std::uint32_t{1} << s.index_set().n_mobile()) - 1, field, 0.1);
  for (auto& c : plan.coords) {
    c.radius = cutoff;
    c.sharp = true;
    c.shell = true;
  }
  return plan;
}

template <bool Complex>
struct Component {
  typename Geometry<Complex>::Point center{};
  double alpha = 0.0;
  int kind = 0;  // 1 power, 2 shell
};

struct GroupSum {
  cplx sum;
  double sum_sq = 0.0;
  std::int64_t count = 0;
};

template <bool Complex>
GroupSum run_group(const SectorPlan& plan, std::uint64_t key, std::int64_t count) {
  using G = Geometry<Complex>;
  using P = typename G::Point;
  constexpr double m = G::kFieldPower;
  const int n = plan.n;
  const double log_h = std::log(kPowerRadius);
  CounterRng rng(key);
  std::array<P, 32> u{};
  std::array<P, 32> anchor{};
  std::array<double, 32> log_off{};
  std::array<bool, 32> anchored{};
  std::array<Component<Complex>, kMaxComponents> comps{};
  std::array<double, kMaxComponents + 1> terms{};
  GroupSum out;
  out.count = count;

  // log|u_k - c|, exact when c is the point u_k was drawn around
  auto log_dist = [&](int k, P c) {
    const auto kk = static_cast<std::size_t>(k);
    if (anchored[kk] && anchor[kk] == c) return log_off[kk];
    return std::log(G::dist(u[kk], c));
  };

  for (std::int64_t it = 0; it < count; ++it) {
    double log_q = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const CoordPlan& cp = plan.coords[kk];
      int nc = 0;
      if (cp.e_zero.real() < 0.0) comps[nc++] = {P{}, alpha_for(cp.e_zero), 1};
      if (cp.one_in_support && cp.e_one.real() < 0.0) comps[nc++] = {P{1.0}, alpha_for(cp.e_one), 1};
      for (int j = 0; j < k && nc < kMaxComponents - 1; ++j) {
        const cplx e = plan.pair_exp(j, k);
        if (e.real() >= 0.0) continue;
        const auto jj = static_cast<std::size_t>(j);
        const bool mixed = plan.coords[jj].inverted != cp.inverted;
        if (!mixed) {
          comps[nc++] = {u[jj], alpha_for(e), 1};
        } else if (u[jj] != P{}) {
          const P center = G::invert(u[jj]);
          if (std::abs(center) < cp.radius + kPowerRadius) comps[nc++] = {center, alpha_for(e), 1};
        }
      }
      const double shell_lo = kPowerRadius;
      if (cp.shell && cp.radius > 2.0 * shell_lo) comps[nc++] = {P{}, 0.0, 2};
      const double singular_share = nc > 0 ? (1.0 - kUniformShare) / nc : 0.0;
      const double uniform_share = nc > 0 ? kUniformShare : 1.0;

      // draw
      const double pick = rng.uniform();
      anchored[kk] = false;
      P x;
      if (pick < uniform_share || nc == 0) {
        x = G::draw_uniform(rng, cp.radius);
      } else {
        const int c = std::min(nc - 1, static_cast<int>((pick - uniform_share) / singular_share));
        const auto& comp = comps[c];
        if (comp.kind == 1) {
          const double lr = G::draw_log_radius(rng, kPowerRadius, comp.alpha);
          x = G::place(rng, comp.center, lr);
          anchored[kk] = true;
          anchor[kk] = comp.center;
          log_off[kk] = lr;
        } else {
          x = G::draw_shell(rng, shell_lo, cp.radius);
        }
      }
      u[kk] = x;

      int nt = 0;
      if (std::abs(x) <= cp.radius) terms[nt++] = std::log(uniform_share) + G::log_uniform_density(cp.radius);
      for (int c = 0; c < nc; ++c) {
        const auto& comp = comps[c];
        if (comp.kind == 1) {
          const double lr = log_dist(k, comp.center);
          if (lr < log_h) terms[nt++] = std::log(singular_share) + G::log_power_density(lr, kPowerRadius, comp.alpha);
        } else {
          const double r = std::abs(x);
          if (r >= shell_lo && r <= cp.radius)
            terms[nt++] = std::log(singular_share) + G::log_shell_density(r, shell_lo, cp.radius);
        }
      }
      log_q += log_sum_exp(terms.data(), nt);
    }
    if (!std::isfinite(log_q)) continue;

    // integrand
    double phi = 1.0;
    cplx log_f = 0.0;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const CoordPlan& cp = plan.coords[kk];
      const P x = u[kk];
      if (cp.sharp) {
        if (std::abs(x) > cp.radius) phi = 0.0;
      } else if (cp.inverted) {
        const double a = G::chi_arg(x);
        phi *= a == 0.0 ? 1.0 : 1.0 - chi(1.0 / a, plan.eps);
      } else {
        phi *= chi(G::chi_arg(x), plan.eps);
      }
      if (phi == 0.0) break;
      const double l0 = m * log_dist(k, P{});
      const double l1 = m * log_dist(k, P{1.0});
      if (!std::isfinite(l0) || !std::isfinite(l1)) {
        ok = false;
        break;
      }
      log_f += cp.e_zero * l0 + cp.e_one * l1;
      for (int j = 0; j < k; ++j) {
        const P y = u[static_cast<std::size_t>(j)];
        const bool mixed = plan.coords[static_cast<std::size_t>(j)].inverted != cp.inverted;
        double ld = 0.0;
        if (!mixed) {
          ld = m * log_dist(k, y);
        } else if (y != P{} && anchored[kk] && anchor[kk] == G::invert(y)) {
          // |1 - x y| = |y| |1/y - x|
          ld = m * (std::log(std::abs(y)) + log_off[kk]);
        } else {
          ld = m * std::log(std::abs(P{1.0} - x * y));
        }
        if (!std::isfinite(ld)) {
          ok = false;
          break;
        }
        log_f += plan.pair_exp(j, k) * ld;
      }
    }
    if (!ok || phi == 0.0) continue;
    const cplx w = phi * std::exp(log_f - log_q);
    out.sum += w;
    out.sum_sq += std::norm(w);
  }
  return out;
}

GroupSum run_group_dispatch(const SectorPlan& plan, Field field, std::uint64_t key, std::int64_t count) {
  return field == Field::C ? run_group<true>(plan, key, count) : run_group<false>(plan, key, count);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Median of means over the groups of one sector.
SectorEstimate reduce_groups(const std::vector<GroupSum>& groups) {
  SectorEstimate est;
  const std::size_t G = groups.size();
  std::vector<double> re(G), im(G);
  for (std::size_t g = 0; g < G; ++g) {
    const cplx mean = groups[g].sum / static_cast<double>(groups[g].count);
    re[g] = mean.real();
    im[g] = mean.imag();
  }
  est.value = {median(re), median(im)};
  if (G >= 2) {
    double mr = std::accumulate(re.begin(), re.end(), 0.0) / G;
    double mi = std::accumulate(im.begin(), im.end(), 0.0) / G;
    double var = 0.0;
    for (std::size_t g = 0; g < G; ++g) var += (re[g] - mr) * (re[g] - mr) + (im[g] - mi) * (im[g] - mi);
    var /= static_cast<double>(G - 1);
    // asymptotic efficiency of the median for near-normal group means
    est.std_error = std::sqrt(std::numbers::pi / 2.0) * std::sqrt(var / static_cast<double>(G));
  } else {
    const GroupSum& g = groups.front();
    const double nn = static_cast<double>(g.count);
    const double var = std::max(0.0, g.sum_sq / nn - std::norm(g.sum / nn));
    est.std_error = std::sqrt(var / nn);
  }
  return est;
}

/// Runs every (sector, group) task and reduces in fixed order.
EvalResult run_plans(const std::vector<SectorPlan>& plans, Field field, const EvalSettings& st) {
  const std::size_t G = static_cast<std::size_t>(st.groups);
  const std::size_t tasks = plans.size() * G;
  std::vector<GroupSum> sums(tasks);
  auto task = [&](std::size_t t) {
    const std::size_t sec = t / G, g = t % G;
    const std::int64_t lo = st.samples_per_sector * static_cast<std::int64_t>(g) / st.groups;
    const std::int64_t hi = st.samples_per_sector * static_cast<std::int64_t>(g + 1) / st.groups;
    const std::uint64_t key = stream_key(st.seed, plans[sec].mask, g, 0x4d43);
    sums[t] = run_group_dispatch(plans[sec], field, key, hi - lo);
  };
  if (st.backend == Backend::openmp) {
    const auto count = static_cast<std::ptrdiff_t>(tasks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < count; ++t) task(static_cast<std::size_t>(t));
  } else {
    for (std::size_t t = 0; t < tasks; ++t) task(t);
  }

  EvalResult res = EvalResult::exact(0.0);
  cplx total = 0.0;
  double var = 0.0;
  for (std::size_t sec = 0; sec < plans.size(); ++sec) {
    std::vector<GroupSum> part(sums.begin() + static_cast<std::ptrdiff_t>(sec * G),
                               sums.begin() + static_cast<std::ptrdiff_t>((sec + 1) * G));
    SectorEstimate est = reduce_groups(part);
    for (int k = 0; k < plans[sec].n; ++k)
      if ((plans[sec].mask >> k) & 1u) est.subset.push_back(k + 2);
    total += est.value;
    var += est.std_error * est.std_error;
    res.sectors.push_back(std::move(est));
  }
  res.value = total;
  res.std_error = std::sqrt(var);
  return res;
}

}  // namespace

EvalResult eval_mc(const SVector& s, Field field, const EvalSettings& settings) {
  settings.validate();
  if (field == Field::Qp) throw std::invalid_argument("eval_mc handles R and C; use the p-adic evaluator for Qp");
  const int n = s.index_set().n_mobile();
  if (n > 20) throw std::invalid_argument("eval_mc supports N <= 23");
  const Membership m = domain_status(s);
  if (m != Membership::inside) return EvalResult::rejected(as_eval_status(m));

  std::vector<SectorPlan> plans;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
    plans.push_back(make_sector(s, mask, field, settings.chi_epsilon));
  return run_plans(plans, field, settings);
}

EvalResult evaluate(const SVector& s, Field field, const EvalSettings& settings) {
  if (field == Field::Qp) throw std::invalid_argument("use the p-adic evaluator for Qp");
  switch (settings.mode) {
    case EvalMode::closed:
      if (s.N() != 4) throw std::invalid_argument("closed form is available for N = 4 only");
      return field == Field::R ? eval_n4_closed_real(s[0], s[1]) : eval_n4_closed_complex(s[0], s[1]);
    case EvalMode::quadrature:
      if (s.N() != 4) throw std::invalid_argument("quadrature is available for N = 4 only");
      return eval_quadrature_n4(s[0], s[1], field);
    case EvalMode::mc:
      return eval_mc(s, field, settings);
  }
  throw std::logic_error("unreachable");
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

}  // namespace

GrowthProbe growth_probe(const SVector& s, Field field, const std::vector<double>& cutoffs,
                         const EvalSettings& settings) {
  if (cutoffs.size() < 3) throw std::invalid_argument("growth_probe needs at least 3 cutoffs");
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    if (!(cutoffs[k] > 1.0)) throw std::invalid_argument("cutoffs must exceed 1");
    if (k > 0 && !(cutoffs[k] > cutoffs[k - 1])) throw std::invalid_argument("cutoffs must be increasing");
  }
  if (field == Field::Qp) throw std::invalid_argument("growth_probe is defined for R and C");

  GrowthProbe probe;
  probe.cutoffs = cutoffs;
  for (double R : cutoffs) {
    if (s.N() == 4) {
      probe.estimates.push_back(truncated_n4(s[0], s[1], field, R));
    } else {
      settings.validate();
      const EvalResult r = run_plans({make_truncated(s, field, R)}, field, settings);
      probe.estimates.push_back(*r.value);
    }
  }

  std::vector<double> lx, ly, dx, dy;
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    lx.push_back(std::log(cutoffs[k]));
    ly.push_back(std::log(std::abs(probe.estimates[k])));
    if (k + 1 < cutoffs.size()) {
      dx.push_back(0.5 * (std::log(cutoffs[k]) + std::log(cutoffs[k + 1])));
      dy.push_back(std::log(std::abs(probe.estimates[k + 1] - probe.estimates[k])));
    }
  }
  probe.log_slope = ls_slope(lx, ly);
  // Increments between cutoffs R_k < R_{k+1} scale as R^kappa for geometric
  // spacing; for non-geometric spacing this is the usual secant approximation.
  probe.growth_exponent = ls_slope(dx, dy);
  return probe;
}

}  // namespace koba
