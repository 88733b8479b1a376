#include "koba/domain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>


namespace koba {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::EQ_A: return "EQ_A";
    case Family::EQ_B: return "EQ_B";
    case Family::EQ_C: return "EQ_C";
    case Family::EQ_D: return "EQ_D";
    case Family::EQ_E: return "EQ_E";
  }
  return "?";
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::Qp: return "Qp";
  }
  return "?";
}

Field parse_field(std::string_view s) {
  if (s == "R") return Field::R;
  if (s == "C") return Field::C;
  if (s == "Qp") return Field::Qp;
  throw std::invalid_argument("unknown field '" + std::string(s) + "' (expected R, C or Qp)");
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::boundary: return "boundary";
  }
  return "?";
}

int AffineForm::coeff(std::size_t position) const {
  return std::binary_search(support.begin(), support.end(), static_cast<std::uint32_t>(position))
             ? sign
             : 0;
}

double AffineForm::slack(const SVector& s) const {
  double acc = 0.0;
  for (std::uint32_t k : support) acc += s[k].real();
  return sign * acc + gamma;
}

cplx AffineForm::evaluate(const SVector& s) const {
  cplx acc = 0.0;
  for (std::uint32_t k : support) acc += s[k];
  return static_cast<double>(sign) * acc + static_cast<double>(gamma);
}

std::vector<int> AffineForm::subset_labels() const {
  std::vector<int> out;
  for (std::uint32_t m = subset; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 2);
  return out;
}

std::string AffineForm::to_text(const IndexSet& idx) const {
  std::string out;
  for (std::uint32_t k : support) {
    if (out.empty())
      out = sign > 0 ? "" : "-";
    else
      out += sign > 0 ? " + " : " - ";
    out += idx[k].name();
  }
  out += gamma > 0 ? " + " : " - ";
  out += std::to_string(std::abs(gamma)) + " > 0";
  return out;
}

std::string AffineForm::to_latex(const IndexSet& idx) const {
  // Written the way the inequalities are usually displayed: positive sums with
  // the constant on the right-hand side.
  std::string out;
  for (std::uint32_t k : support) {
    if (!out.empty()) out += " + ";
    const PairIndex& p = idx[k];
    out += "\\operatorname{Re}(s_{" + std::to_string(p.i) + (p.i >= 10 || p.j >= 10 ? "," : "") +
           std::to_string(p.j) + "})";
  }
  out += sign > 0 ? " > " : " < ";
  out += std::to_string(-sign * gamma);
  return out;
}

namespace {

std::vector<std::uint32_t> masks_with_min_size(int n, int min_size) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t m = 1; m < limit; ++m)
    if (std::popcount(m) >= min_size) out.push_back(m);
  return out;
}

AffineForm build_form(const IndexSet& idx, Family fam, std::uint32_t mask) {
  const int N = idx.N();
  const int card = std::popcount(mask);
  auto in = [mask](int label) { return (mask >> (label - 2)) & 1u; };

  AffineForm f;
  f.family = fam;
  f.subset = mask;
  auto& sup = f.support;
  for (int j = 2; j <= N - 2; ++j) {
    if (!in(j)) continue;
    if (fam == Family::EQ_B || fam == Family::EQ_E) sup.push_back(static_cast<std::uint32_t>(idx.pos_zero(j)));
    if (fam == Family::EQ_C || fam == Family::EQ_E) sup.push_back(static_cast<std::uint32_t>(idx.pos_one(j)));
  }
  for (int i = 2; i <= N - 2; ++i)
    for (int j = i + 1; j <= N - 2; ++j) {
      const bool both = in(i) && in(j);
      const bool touches = in(i) || in(j);
      if (both || (fam == Family::EQ_E && touches))
        sup.push_back(static_cast<std::uint32_t>(idx.pos_mobile(i, j)));
    }
  std::sort(sup.begin(), sup.end());

  switch (fam) {
    case Family::EQ_B:
    case Family::EQ_C:
      f.sign = 1;
      f.gamma = card;
      break;
    case Family::EQ_D:
      f.sign = 1;
      f.gamma = card - 1;
      break;
    case Family::EQ_E:
      f.sign = -1;
      f.gamma = -card;
      break;
    case Family::EQ_A:
      throw std::logic_error("EQ_A forms are not subset-indexed");
  }
  return f;
}

}  // namespace

InequalitySystem enumerate_inequalities(int N) {
  if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
  if (N > kMaxEnumerationN)
    throw std::length_error("refusing to enumerate 2^" + std::to_string(N - 1) +
                            " inequalities (N > " + std::to_string(kMaxEnumerationN) + ")");
  const IndexSet idx(N);
  const int n = idx.n_mobile();

  InequalitySystem sys;
  sys.N = N;
  sys.forms.reserve(expected_form_count(N));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    AffineForm f;
    f.family = Family::EQ_A;
    f.sign = 1;
    f.gamma = 1;
    f.support = {static_cast<std::uint32_t>(k)};
    sys.forms.push_back(std::move(f));
  }

  const struct {
    Family fam;
    int min_size;
  } plan[] = {{Family::EQ_B, 2}, {Family::EQ_C, 2}, {Family::EQ_D, 3}, {Family::EQ_E, 1}};
  for (const auto& step : plan) {
    const auto masks = masks_with_min_size(n, step.min_size);
    const std::size_t base = sys.forms.size();
    sys.forms.resize(base + masks.size());
    const auto count = static_cast<std::ptrdiff_t>(masks.size());
#pragma omp parallel for schedule(static) if (count > 4096)
    for (std::ptrdiff_t m = 0; m < count; ++m)
      sys.forms[base + static_cast<std::size_t>(m)] = build_form(idx, step.fam, masks[static_cast<std::size_t>(m)]);
  }
  return sys;
}

Membership MembershipReport::status() const {
  if (!violated.empty()) return Membership::outside;
  if (!boundary.empty()) return Membership::boundary;
  return Membership::inside;
}

namespace {

void require_same_n(const InequalitySystem& sys, const SVector& s) {
  if (sys.N != s.N())
    throw std::invalid_argument("dimension mismatch: system N=" + std::to_string(sys.N) +
                                ", point N=" + std::to_string(s.N()));
}

MembershipReport classify(const std::vector<double>& slacks, double tol) {
  MembershipReport rep;
  for (std::size_t k = 0; k < slacks.size(); ++k) {
    if (slacks[k] < -tol)
      rep.violated.push_back({k, slacks[k]});
    else if (slacks[k] <= tol)
      rep.boundary.push_back({k, slacks[k]});
  }
  rep.inside = rep.violated.empty() && rep.boundary.empty();
  return rep;
}

}  // namespace

MembershipReport check_membership_serial(const InequalitySystem& sys, const SVector& s, double tol) {
  require_same_n(sys, s);
  if (!(tol >= 0)) throw std::invalid_argument("tol must be >= 0");
  std::vector<double> slacks(sys.forms.size());
  for (std::size_t k = 0; k < sys.forms.size(); ++k) slacks[k] = sys.forms[k].slack(s);
  return classify(slacks, tol);
}

MembershipReport check_membership(const InequalitySystem& sys, const SVector& s, double tol) {
  require_same_n(sys, s);
  if (!(tol >= 0)) throw std::invalid_argument("tol must be >= 0");
  std::vector<double> slacks(sys.forms.size());
  const auto count = static_cast<std::ptrdiff_t>(sys.forms.size());
#pragma omp parallel for schedule(static) if (count > 4096)
  for (std::ptrdiff_t k = 0; k < count; ++k)
    slacks[static_cast<std::size_t>(k)] = sys.forms[static_cast<std::size_t>(k)].slack(s);
  return classify(slacks, tol);
}

Membership domain_status(const SVector& s, double tol) {
  return check_membership(enumerate_inequalities(s.N()), s, tol).status();
}

bool box_contains(int N, const SVector& s) {
  if (s.N() != N)
    throw std::invalid_argument("dimension mismatch: N=" + std::to_string(N) + ", point N=" +
                                std::to_string(s.N()));
  const double lo = -2.0 / (N - 2);
  const double hi = -2.0 / N;
  return std::all_of(s.values().begin(), s.values().end(), [&](const cplx& v) {
    return v.real() > lo && v.real() < hi;
  });
}

std::vector<PoleFamily> pole_families(int N, Field field) {
  const InequalitySystem sys = enumerate_inequalities(N);
  std::vector<PoleFamily> out;
  out.reserve(sys.forms.size());
  for (const auto& f : sys.forms)
    out.push_back({f, field == Field::C ? 0.5 : 1.0, field == Field::Qp});
  return out;
}

std::vector<PoleHit> is_on_pole(const std::vector<PoleFamily>& families, const SVector& s,
                                int t_max, double tol) {
  if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");
  for (const PoleFamily& fam : families)
    if (!fam.form.support.empty() && fam.form.support.back() >= s.size())
      throw std::invalid_argument("pole families do not match the s-vector dimension");
  std::vector<PoleHit> hits;
  for (std::size_t k = 0; k < families.size(); ++k) {
    const PoleFamily& fam = families[k];
    if (fam.real_part_only) {
      const double r = fam.form.slack(s);
      if (std::abs(r) <= tol) hits.push_back({k, 0.0, std::abs(r)});
      continue;
    }
    const cplx base = fam.form.evaluate(s);
    const int steps = static_cast<int>(std::lround(t_max / fam.step));
    for (int m = 0; m <= steps; ++m) {
      const double t = m * fam.step;
      const double r = std::abs(base + t);
      if (r <= tol) hits.push_back({k, t, r});
    }
  }
  return hits;
}

std::vector<PoleHit> is_on_pole(const SVector& s, Field field, int t_max, double tol) {
  return is_on_pole(pole_families(s.N(), field), s, t_max, tol);
}

}  // namespace koba
