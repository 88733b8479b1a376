#include "koba/padic.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>

#include "koba/domain.hpp"

namespace koba {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

void PadicParams::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (max_memo < 1) throw std::invalid_argument("max_memo must be >= 1");
}

namespace {

EvalStatus as_eval_status(Membership m) {
  return m == Membership::outside ? EvalStatus::diverged_by_domain : EvalStatus::boundary;
}

void require_prime(int p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
}

using Poly = std::map<std::tuple<int, int, int>, std::int64_t>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const auto k = std::make_tuple(std::get<0>(ka) + std::get<0>(kb), std::get<1>(ka) + std::get<1>(kb),
                                     std::get<2>(ka) + std::get<2>(kb));
      out[k] += ca * cb;
    }
  return out;
}

void add_to(Poly& a, const Poly& b, std::int64_t scale) {
  for (const auto& [k, c] : b) a[k] += scale * c;
}

std::vector<MonomialTerm> terms_of(const Poly& p) {
  std::vector<MonomialTerm> out;
  for (const auto& [k, c] : p)
    if (c != 0) out.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k)});
  return out;
}

}  // namespace

cplx PadicN4Form::value() const {
  const double lp = std::log(static_cast<double>(p));
  const cplx u = std::exp(u_exp * lp), v = std::exp(v_exp * lp), w = std::exp(w_exp * lp);
  auto eval = [&](const std::vector<MonomialTerm>& ts) {
    cplx acc = 0.0;
    for (const auto& t : ts)
      acc += static_cast<double>(t.coef) * std::pow(u, t.u_pow) * std::pow(v, t.v_pow) * std::pow(w, t.w_pow);
    return acc;
  };
  return eval(numerator) / eval(denominator);
}

PadicN4Form padic_n4_form(int p, cplx a, cplx b) {
  require_prime(p);
  PadicN4Form f;
  f.p = p;
  f.u_exp = -(a + 1.0);
  f.v_exp = -(b + 1.0);
  f.w_exp = a + b + 1.0;

  const Poly one{{{0, 0, 0}, 1}};
  const Poly u{{{1, 0, 0}, 1}}, v{{{0, 1, 0}, 1}}, w{{{0, 0, 1}, 1}};
  const Poly omu{{{0, 0, 0}, 1}, {{1, 0, 0}, -1}};
  const Poly omv{{{0, 0, 0}, 1}, {{0, 1, 0}, -1}};
  const Poly omw{{{0, 0, 0}, 1}, {{0, 0, 1}, -1}};
  const Poly den3 = mul(mul(omu, omv), omw);

  Poly num;
  add_to(num, den3, p - 2);
  add_to(num, mul(u, mul(omv, omw)), p - 1);
  add_to(num, mul(v, mul(omu, omw)), p - 1);
  add_to(num, mul(w, mul(omu, omv)), p - 1);
  Poly den;
  add_to(den, den3, p);
  f.numerator = terms_of(num);
  f.denominator = terms_of(den);
  return f;
}

EvalResult eval_n4_padic(int p, cplx a, cplx b) {
  require_prime(p);
  const Membership m = domain_status(SVector(4, {a, b}));
  if (m != Membership::inside) return EvalResult::rejected(as_eval_status(m));
  const double lp = std::log(static_cast<double>(p));
  const cplx u = std::exp(-(a + 1.0) * lp);
  const cplx v = std::exp(-(b + 1.0) * lp);
  const cplx w = std::exp((a + b + 1.0) * lp);
  const double pd = p;
  return EvalResult::exact((1.0 - 2.0 / pd) + (1.0 - 1.0 / pd) * (u / (1.0 - u) + v / (1.0 - v) + w / (1.0 - w)));
}

// ---------------------------------------------------------------------------
// Cluster recursion
//
// Points are the free coordinates (bits 0..n-1) and the three fixed points
// P0, P1 and Pinf (bits n, n+1, n+2). Coordinates outside the unit ball are
// inverted, y = 1/x, which turns infinity into a point at the origin of the
// inverted chart with exponent  -s_1k - s_(N-1)k - sum_j s_jk - 2.
//
// G(S) is the integral over configurations of the cluster S inside one
// residue disc, relative to its anchor (the fixed point of S if any, else its
// lowest free point), normalized so the disc has unit measure. Splitting by
// residues mod p gives
//   G(S) = p^{-m-E(S)} G(S) + sum_{A proper} p^{-|A|-E(a+A)} G(a+A) Q(free-A, p-1)
// where Q(R, k) spreads R over k unused residue classes.

namespace {

struct Val {
  cplx v;
  double t = 0.0;  ///< certified bound on |exact - v|
};

Val mul(const Val& a, const Val& b) {
  return {a.v * b.v, std::abs(a.v) * b.t + a.t * std::abs(b.v) + a.t * b.t};
}

Val scale(cplx c, const Val& a) { return {c * a.v, std::abs(c) * a.t}; }

void add(Val& acc, const Val& x) {
  acc.v += x.v;
  acc.t += x.t;
}

struct QKey {
  std::uint64_t mask;
  std::int64_t avail;
  int depth;
  bool operator==(const QKey&) const = default;
};

struct QKeyHash {
  std::size_t operator()(const QKey& k) const {
    std::uint64_t h = k.mask * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(k.avail) + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.depth) + 0x85157af5b5a3e1c7ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class ClusterTree {
 public:
  /// `e` is the (n+3)x(n+3) pair-exponent matrix; depth_cap < 0 disables the cap.
  ClusterTree(int p, int n, std::vector<cplx> e, int depth_cap, std::size_t max_memo)
      : p_(p), n_(n), e_(std::move(e)), cap_(depth_cap), max_memo_(max_memo),
        log_p_(std::log(static_cast<double>(p))) {}

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::uint64_t bit_p0() const { return std::uint64_t{1} << n_; }
  [[nodiscard]] std::uint64_t bit_p1() const { return std::uint64_t{1} << (n_ + 1); }
  [[nodiscard]] std::uint64_t bit_inf() const { return std::uint64_t{1} << (n_ + 2); }

  /// p^{-x}
  [[nodiscard]] cplx pw(cplx x) const { return std::exp(-x * log_p_); }

  [[nodiscard]] cplx energy(std::uint64_t S) const {
    cplx acc = 0.0;
    const int np = n_ + 3;
    for (int a = 0; a < np; ++a) {
      if (!((S >> a) & 1u)) continue;
      for (int b = a + 1; b < np; ++b)
        if ((S >> b) & 1u) acc += e_[static_cast<std::size_t>(a * np + b)];
    }
    return acc;
  }

  /// Measure-weighted sub-disc factor p^{-|A|-E(anchor+A)} G(anchor+A).
  Val disc(std::uint64_t S, int depth) {
    const int k = std::popcount(S) - 1;
    return scale(pw(static_cast<double>(k) + energy(S)), G(S, depth));
  }

  Val G(std::uint64_t S, int depth) {
    if (std::popcount(S) <= 1) return {1.0, 0.0};
    if (cap_ >= 0 && depth > cap_) return {0.0, real_tree().G(S, 0).v.real()};
    const int key_depth = cap_ >= 0 ? depth : 0;
    const QKey key{S, -1, key_depth};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::uint64_t fixed = S & (bit_p0() | bit_p1() | bit_inf());
    const std::uint64_t anchor = fixed ? fixed : (S & (~S + 1));
    const std::uint64_t free = S & ~anchor;
    const int m = std::popcount(free);

    Val rest;
    for (std::uint64_t A = (free - 1) & free;; A = (A - 1) & free) {
      // proper submasks of free, A = 0 included
      const Val head = A ? disc(anchor | A, depth + 1) : Val{1.0, 0.0};
      if (head.v != 0.0 || head.t != 0.0) add(rest, mul(head, Q(free & ~A, p_ - 1, depth + 1)));
      if (A == 0) break;
    }
    const cplx c = pw(static_cast<double>(m) + energy(S));
    const cplx den = 1.0 - c;
    const Val out{rest.v / den, rest.t / std::abs(den)};
    store(key, out);
    return out;
  }

  /// Distributes the free points R over `avail` distinct unused residue discs.
  Val Q(std::uint64_t R, std::int64_t avail, int depth) {
    if (R == 0) return {1.0, 0.0};
    if (avail <= 0) return {0.0, 0.0};
    const int key_depth = cap_ >= 0 ? depth : 0;
    const QKey key{R, avail, key_depth};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::uint64_t low = R & (~R + 1);
    const std::uint64_t others = R & ~low;
    Val acc;
    for (std::uint64_t T = others;; T = (T - 1) & others) {
      const std::uint64_t B = low | T;
      const Val block = scale(static_cast<double>(avail) * pw(1.0), disc(B, depth));
      add(acc, mul(block, Q(R & ~B, avail - 1, depth)));
      if (T == 0) break;
    }
    store(key, acc);
    return acc;
  }

  /// Integral over Z_p^{|I|} of the coordinates in I (unit-ball part).
  Val unit(std::uint64_t I, int depth) {
    Val acc;
    for (std::uint64_t A0 = I;; A0 = (A0 - 1) & I) {
      const Val f0 = A0 ? disc(bit_p0() | A0, depth) : Val{1.0, 0.0};
      const std::uint64_t left = I & ~A0;
      for (std::uint64_t A1 = left;; A1 = (A1 - 1) & left) {
        const Val f1 = A1 ? disc(bit_p1() | A1, depth) : Val{1.0, 0.0};
        add(acc, mul(mul(f0, f1), Q(left & ~A1, p_ - 2, depth)));
        if (A1 == 0) break;
      }
      if (A0 == 0) break;
    }
    return acc;
  }

  /// Integral over the inverted coordinates J (|x| > 1), y = 1/x in pZ_p.
  Val outer(std::uint64_t J, int depth) {
    if (J == 0) return {1.0, 0.0};
    return disc(bit_inf() | J, depth);
  }

 private:
  ClusterTree& real_tree() {
    if (!real_) {
      std::vector<cplx> re(e_.size());
      for (std::size_t k = 0; k < e_.size(); ++k) re[k] = e_[k].real();
      real_ = std::make_unique<ClusterTree>(p_, n_, std::move(re), -1, max_memo_);
    }
    return *real_;
  }

  void store(const QKey& key, const Val& v) {
    memo_.emplace(key, v);
    if (memo_.size() > max_memo_)
      throw resource_limit_error("p-adic cluster memo exceeded " + std::to_string(max_memo_) + " entries");
  }

  int p_;
  int n_;
  std::vector<cplx> e_;
  int cap_;
  std::size_t max_memo_;
  double log_p_;
  std::unordered_map<QKey, Val, QKeyHash> memo_;
  std::unique_ptr<ClusterTree> real_;
};

constexpr int kMaxTreeMobile = 40;

ClusterTree build_tree(const PadicParams& prm) {
  const SVector& s = prm.s;
  const IndexSet& idx = s.index_set();
  const int n = idx.n_mobile();
  if (n > kMaxTreeMobile) throw std::invalid_argument("p-adic tree supports N <= 43");
  const int np = n + 3;
  std::vector<cplx> e(static_cast<std::size_t>(np * np), 0.0);
  auto set = [&](int a, int b, cplx v) {
    e[static_cast<std::size_t>(a * np + b)] = v;
    e[static_cast<std::size_t>(b * np + a)] = v;
  };
  const int P0 = n, P1 = n + 1, Pinf = n + 2;
  for (int k = 0; k < n; ++k) {
    const int label = k + 2;
    const cplx s0 = s[idx.pos_zero(label)];
    const cplx s1 = s[idx.pos_one(label)];
    set(k, P0, s0);
    set(k, P1, s1);
    cplx total = s0 + s1 + 2.0;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const cplx sjk = s[idx.pos_mobile(j + 2, label)];
      total += sjk;
      if (j > k) set(j, k, sjk);
    }
    set(k, Pinf, -total);
  }
  // Effective cap: clusters nest at most n levels deep, so larger caps are exact.
  const int cap = std::min(prm.max_depth, n + 1);
  return ClusterTree(prm.p, n, std::move(e), cap, prm.max_memo);
}

std::vector<int> labels_of(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k)
    if ((mask >> k) & 1u) out.push_back(k + 2);
  return out;
}

}  // namespace

EvalResult eval_padic_tree(const PadicParams& params) {
  params.validate();
  const Membership m = domain_status(params.s);
  if (m != Membership::inside) return EvalResult::rejected(as_eval_status(m));

  ClusterTree tree = build_tree(params);
  const int n = tree.n();
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  EvalResult res = EvalResult::exact(0.0);
  cplx total = 0.0;
  double tail = 0.0;
  for (std::uint64_t I = 0; I <= all; ++I) {
    const Val v = mul(tree.unit(I, 1), tree.outer(all & ~I, 1));
    total += v.v;
    tail += v.t;
    res.sectors.push_back({labels_of(I, n), v.v, 0.0});
  }
  res.value = total;
  res.tail_bound = tail;
  return res;
}

EvalResult padic_unit_ball(const PadicParams& params) {
  params.validate();
  ClusterTree tree = build_tree(params);
  const std::uint64_t all = (std::uint64_t{1} << tree.n()) - 1;
  const Val v = tree.unit(all, 1);
  EvalResult res = EvalResult::exact(v.v);
  res.tail_bound = v.t;
  return res;
}

}  // namespace koba
