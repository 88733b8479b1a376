#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>

#include "koba/domain.hpp"
#include "koba/kinematics.hpp"
#include "oracles.hpp"

using namespace koba;

namespace {

std::set<std::pair<int, std::vector<std::uint32_t>>> as_set(const InequalitySystem& sys) {
  std::set<std::pair<int, std::vector<std::uint32_t>>> out;
  for (const auto& f : sys.forms) out.insert({f.sign * 1000 + f.gamma, f.support});
  return out;
}

std::set<std::pair<int, std::vector<std::uint32_t>>> fixture_set(int N, const std::string& file) {
  const IndexSet idx(N);
  std::set<std::pair<int, std::vector<std::uint32_t>>> out;
  for (const auto& t : oracle::read_fixture(std::string(KOBA_FIXTURE_DIR) + "/" + file)) {
    std::vector<std::uint32_t> support;
    for (auto [i, j] : t.labels) support.push_back(static_cast<std::uint32_t>(idx.position(i, j)));
    std::sort(support.begin(), support.end());
    // sum > r  ->  sum - r > 0 ;  sum < r  ->  -sum + r > 0
    const int sign = t.op == '>' ? 1 : -1;
    const int gamma = t.op == '>' ? -t.rhs : t.rhs;
    out.insert({sign * 1000 + gamma, support});
  }
  return out;
}

SVector random_box_point(int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0 / (N - 2), -2.0 / N);
  SVector s(N);
  for (std::size_t k = 0; k < s.size(); ++k) {
    double v = u(rng);
    while (v <= -2.0 / (N - 2) || v >= -2.0 / N) v = u(rng);
    s[k] = v;
  }
  return s;
}

}  // namespace

TEST_CASE("N = 4 system") {
  const InequalitySystem sys = enumerate_inequalities(4);
  const IndexSet idx(4);
  REQUIRE(sys.forms.size() == 3);
  CHECK(sys.forms[0].to_text(idx) == "s12 + 1 > 0");
  CHECK(sys.forms[1].to_text(idx) == "s32 + 1 > 0");
  CHECK(sys.forms[2].to_text(idx) == "-s12 - s32 - 1 > 0");
  CHECK(sys.forms[2].family == Family::EQ_E);
  CHECK(sys.forms[2].to_latex(idx) == "\\operatorname{Re}(s_{12}) + \\operatorname{Re}(s_{32}) < -1");
}

TEST_CASE("form count is 2^{N-1} - N - 1") {
  const std::vector<std::size_t> want{3, 10, 25, 56, 119, 246, 501, 1012, 2035};
  for (int N = 4; N <= 12; ++N) {
    const auto sys = enumerate_inequalities(N);
    CHECK(sys.forms.size() == want[static_cast<std::size_t>(N - 4)]);
    CHECK(sys.forms.size() == expected_form_count(N));
  }
}

TEST_CASE("every form has the one-sign pattern and no form repeats") {
  for (int N = 4; N <= 11; ++N) {
    const auto sys = enumerate_inequalities(N);
    std::set<std::pair<int, std::vector<std::uint32_t>>> seen;
    for (const auto& f : sys.forms) {
      CHECK(!f.support.empty());
      CHECK((f.sign == 1 || f.sign == -1));
      CHECK(f.sign * f.gamma > 0);
      CHECK(std::is_sorted(f.support.begin(), f.support.end()));
      for (std::size_t k = 0; k < dimension(N); ++k) {
        const int c = f.coeff(k);
        CHECK((c == 0 || c == f.sign));
      }
      CHECK(seen.insert({f.sign * 1000 + f.gamma, f.support}).second);
    }
  }
}

TEST_CASE("family sizes") {
  for (int N = 4; N <= 10; ++N) {
    const int n = N - 3;
    const auto sys = enumerate_inequalities(N);
    std::array<int, 5> count{};
    for (const auto& f : sys.forms) ++count[static_cast<std::size_t>(f.family)];
    const int subsets_ge2 = (1 << n) - n - 1;
    CHECK(count[0] == N * (N - 3) / 2);
    CHECK(count[1] == subsets_ge2);
    CHECK(count[2] == subsets_ge2);
    CHECK(count[3] == subsets_ge2 - n * (n - 1) / 2);
    CHECK(count[4] == (1 << n) - 1);
  }
}

TEST_CASE("enumeration guards") {
  CHECK_THROWS_AS(enumerate_inequalities(3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_inequalities(27), std::length_error);
  CHECK_THROWS_AS(pole_families(3, Field::R), std::invalid_argument);
}

TEST_CASE("N = 5 system equals the hand-transcribed list") {
  CHECK(as_set(enumerate_inequalities(5)) == fixture_set(5, "n5_ex7.txt"));
}

TEST_CASE("N = 6 system equals the hand-transcribed list") {
  const auto fx = fixture_set(6, "n6.txt");
  CHECK(fx.size() == 25);
  CHECK(as_set(enumerate_inequalities(6)) == fx);
}

TEST_CASE("membership examples") {
  const auto sys5 = enumerate_inequalities(5);
  CHECK(check_membership(sys5, diagonal_svector(5, -0.5)).status() == Membership::inside);

  const auto sys4 = enumerate_inequalities(4);
  const MembershipReport r = check_membership(sys4, diagonal_svector(4, -0.5));
  CHECK(r.status() == Membership::boundary);
  REQUIRE(r.boundary.size() == 1);
  CHECK(sys4.forms[r.boundary[0].form_index].family == Family::EQ_E);
  CHECK(r.violated.empty());
}

TEST_CASE("the counterexample point violates only the J = {2} EQ_E form") {
  SVector s(5);
  s(1, 2) = -0.25;
  s(1, 3) = -2.0 / 3;
  s(4, 2) = -2.0 / 3;
  s(4, 3) = -2.0 / 3;
  s(2, 3) = 0.0;
  const auto sys = enumerate_inequalities(5);
  const MembershipReport r = check_membership(sys, s);
  CHECK(r.status() == Membership::outside);
  REQUIRE(r.violated.size() == 1);
  const AffineForm& f = sys.forms[r.violated[0].form_index];
  CHECK(f.family == Family::EQ_E);
  CHECK(f.subset_labels() == std::vector<int>{2});
  // Re(s12) + Re(s42) + Re(s23) = -11/12, which is not < -1
  const double sum = s(1, 2).real() + s(4, 2).real() + s(2, 3).real();
  CHECK(sum == doctest::Approx(-11.0 / 12).epsilon(1e-15));
  CHECK(r.violated[0].slack == doctest::Approx(-1.0 / 12).epsilon(1e-12));
  CHECK(domain_status(s) == Membership::outside);
}

TEST_CASE("membership rejects a dimension mismatch") {
  CHECK_THROWS_AS(check_membership(enumerate_inequalities(5), diagonal_svector(4, -0.6)), std::invalid_argument);
  CHECK_THROWS_AS(box_contains(5, diagonal_svector(4, -0.6)), std::invalid_argument);
  CHECK_THROWS_AS(is_on_pole(pole_families(5, Field::R), diagonal_svector(4, -0.6), 3, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("box_contains examples") {
  CHECK(box_contains(5, diagonal_svector(5, -0.5)));
  CHECK(box_contains(6, diagonal_svector(6, -0.45)));
  CHECK_FALSE(box_contains(4, diagonal_svector(4, -1.2)));
  CHECK_FALSE(box_contains(5, diagonal_svector(5, -0.4)));
}

TEST_CASE("random box points are inside for N = 4..9") {
  std::mt19937_64 rng(20240611);
  for (int N = 4; N <= 9; ++N) {
    const auto sys = enumerate_inequalities(N);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
      const SVector s = random_box_point(N, rng);
      if (!box_contains(N, s) || !check_membership(sys, s).inside) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("swapping the fixed labels maps EQ_B onto EQ_C and preserves membership") {
  for (int N = 5; N <= 8; ++N) {
    const auto sys = enumerate_inequalities(N);
    const IndexSet idx(N);
    std::map<std::uint32_t, const AffineForm*> b_forms, c_forms;
    for (const auto& f : sys.forms) {
      if (f.family == Family::EQ_B) b_forms[f.subset] = &f;
      if (f.family == Family::EQ_C) c_forms[f.subset] = &f;
    }
    REQUIRE(b_forms.size() == c_forms.size());
    for (const auto& [mask, fb] : b_forms) {
      SVector probe(N);
      for (std::uint32_t k : fb->support) probe[k] = 1.0;
      const SVector swapped = probe.swap_fixed_labels();
      std::vector<std::uint32_t> image;
      for (std::size_t k = 0; k < swapped.size(); ++k)
        if (swapped[k] != 0.0) image.push_back(static_cast<std::uint32_t>(k));
      CHECK(image == c_forms.at(mask)->support);
    }
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.2, 0.2);
  for (int N = 4; N <= 8; ++N) {
    const auto sys = enumerate_inequalities(N);
    for (int k = 0; k < 300; ++k) {
      SVector s(N);
      for (std::size_t q = 0; q < s.size(); ++q) s[q] = u(rng);
      CHECK(check_membership(sys, s).status() == check_membership(sys, s.swap_fixed_labels()).status());
    }
  }
}

TEST_CASE("parallel membership agrees with the serial reference") {
  std::mt19937_64 rng(99);
  for (int N : {6, 10, 15}) {
    const auto sys = enumerate_inequalities(N);
    std::uniform_real_distribution<double> u(-2.0 / (N - 2) - 0.02, -2.0 / N + 0.02);
    for (int k = 0; k < 20; ++k) {
      SVector s(N);
      for (std::size_t q = 0; q < s.size(); ++q) s[q] = u(rng);
      const auto a = check_membership(sys, s);
      const auto b = check_membership_serial(sys, s);
      CHECK(a.inside == b.inside);
      REQUIRE(a.violated.size() == b.violated.size());
      for (std::size_t q = 0; q < a.violated.size(); ++q) {
        CHECK(a.violated[q].form_index == b.violated[q].form_index);
        CHECK(a.violated[q].slack == b.violated[q].slack);
      }
      CHECK(a.boundary.size() == b.boundary.size());
    }
  }
}

TEST_CASE("pole families for N = 4") {
  const IndexSet idx(4);
  for (Field f : {Field::R, Field::C, Field::Qp}) {
    const auto fams = pole_families(4, f);
    REQUIRE(fams.size() == 3);
    for (const auto& pf : fams) {
      CHECK(pf.step == (f == Field::C ? 0.5 : 1.0));
      CHECK(pf.real_part_only == (f == Field::Qp));
    }
    CHECK(fams[0].form.to_text(idx) == "s12 + 1 > 0");
    CHECK(fams[2].form.to_text(idx) == "-s12 - s32 - 1 > 0");
  }
}

TEST_CASE("is_on_pole examples") {
  const SVector hit(4, {-1.0, -0.3});
  const auto h = is_on_pole(hit, Field::R, 3, 1e-9);
  REQUIRE(h.size() == 1);
  CHECK(h[0].family_index == 0);
  CHECK(h[0].t == 0.0);

  CHECK(is_on_pole(SVector(4, {-0.6, -0.6}), Field::R, 3, 1e-9).empty());

  // s12 + s32 = -1 + t with t = 1/2 lies on a C family only
  const SVector half(4, {-0.3, -0.2});
  CHECK(is_on_pole(half, Field::R, 3, 1e-9).empty());
  const auto hc = is_on_pole(half, Field::C, 3, 1e-9);
  REQUIRE(hc.size() == 1);
  CHECK(hc[0].t == 0.5);

  // Qp matches real parts at t = 0 only, whatever the imaginary part
  const SVector qp(4, {cplx(-1.0, 2.0), cplx(-0.3, 0.0)});
  CHECK(is_on_pole(qp, Field::Qp, 0, 1e-9).size() == 1);
  CHECK(is_on_pole(qp, Field::R, 3, 1e-9).empty());

  CHECK_THROWS_AS(is_on_pole(hit, Field::R, -1, 1e-9), std::invalid_argument);
}

TEST_CASE("the N = 5 equidistributed point avoids every integer shift") {
  const SVector s = momentum_to_s(build_equidistributed(5));
  CHECK(is_on_pole(s, Field::R, 10, 1e-9).empty());
}

TEST_CASE("complex parts do not affect membership") {
  SVector s = diagonal_svector(5, -0.5);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] += cplx(0.0, 3.0 * static_cast<double>(k));
  CHECK(domain_status(s) == Membership::inside);
}
