#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "koba/coulomb.hpp"
#include "koba/padic.hpp"
#include "oracles.hpp"

using namespace koba;

namespace {

bool same_bits(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (int k = 0; lo + k * step <= hi + 1e-12; ++k) g.push_back(lo + k * step);
  return g;
}

}  // namespace

TEST_CASE("charges map to pair exponents") {
  const GasSpec g{5, {1.0, -2.0, 0.5, 3.0}, 0.25};
  const SVector s = charges_to_s(g);
  CHECK(s(1, 2) == cplx(0.25 * -2.0 * 1.0));
  CHECK(s(1, 3) == cplx(0.25 * 0.5 * 1.0));
  CHECK(s(4, 2) == cplx(0.25 * -2.0 * 3.0));
  CHECK(s(4, 3) == cplx(0.25 * 0.5 * 3.0));
  CHECK(s(2, 3) == cplx(0.25 * -2.0 * 0.5));
}

TEST_CASE("gas validation") {
  CHECK_THROWS_AS(charges_to_s({4, {1, -1, 1}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(charges_to_s({4, {1, -1}, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(charges_to_s({3, {1, -1}, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(charges_to_s({4, {1, -1, 1}, -1.0}), std::invalid_argument);
}

TEST_CASE("scaling charges by sqrt(lambda) and beta by 1/lambda leaves exponents fixed") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0), l(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 4 + trial % 5;
    GasSpec g{N, std::vector<double>(N - 1), 0.3 + 0.01 * trial};
    for (double& e : g.charges) e = u(rng);
    const double lam = l(rng);
    GasSpec h = g;
    for (double& e : h.charges) e *= std::sqrt(lam);
    h.beta /= lam;
    const SVector a = charges_to_s(g), b = charges_to_s(h);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-14 * (1 + std::abs(a[k])));
  }
}

TEST_CASE("window for alternating charges at N = 4 is (1/2, 1)") {
  const auto w = beta_window(4, {1, -1, 1}, grid(0.01, 2.0, 0.01));
  REQUIRE(w.size() == 1);
  CHECK(std::abs(w[0].lo - 0.5) <= 1e-6);
  CHECK(std::abs(w[0].hi - 1.0) <= 1e-6);
  CHECK(domain_status(charges_to_s({4, {1, -1, 1}, w[0].lo})) != Membership::outside);
}

TEST_CASE("window for like charges is empty") {
  CHECK(beta_window(4, {1, 1, 1}, grid(0.01, 5.0, 0.01)).empty());
}

TEST_CASE("window edges at the grid ends stay at the grid values") {
  const auto w = beta_window(4, {1, -1, 1}, grid(0.6, 0.9, 0.05));
  REQUIRE(w.size() == 1);
  CHECK(w[0].lo == 0.6);
  CHECK(w[0].hi == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("window consistency on random charges") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto g = grid(0.01, 3.0, 0.01);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = 4 + trial % 3;
    std::vector<double> e(N - 1);
    for (double& x : e) x = u(rng);
    const auto win = beta_window(N, e, g);
    for (double b : g) {
      bool in_some = false, near_edge = false;
      for (const auto& iv : win) {
        if (b > iv.lo && b < iv.hi) in_some = true;
        if (std::abs(b - iv.lo) < 1e-6 || std::abs(b - iv.hi) < 1e-6) near_edge = true;
      }
      if (near_edge) continue;
      const bool inside = domain_status(charges_to_s({N, e, b})) == Membership::inside;
      CHECK(inside == in_some);
    }
    for (std::size_t k = 1; k < win.size(); ++k) CHECK(win[k - 1].hi < win[k].lo);
  }
}

TEST_CASE("window rejects bad grids") {
  CHECK_THROWS_AS(beta_window(4, {1, -1, 1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(beta_window(4, {1, -1, 1}, {0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(beta_window(4, {1, -1, 1}, {-0.1, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(beta_window(4, {1, -1}, {0.1, 0.4}), std::invalid_argument);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.01:2:0.01");
  CHECK(g.size() == 200);
  CHECK(g.front() == 0.01);
  CHECK(g.back() == doctest::Approx(2.0));
  CHECK(parse_grid("1:1:0.5").size() == 1);
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("2:1:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:1:0.1"), std::invalid_argument);
}

TEST_CASE("partition function composes bit-for-bit over R and C") {
  PartitionSettings ps;
  ps.real.mode = EvalMode::closed;
  const GasSpec g{4, {1, -1, 1}, 0.7};
  const EvalResult r = partition_function(g, Field::R, ps);
  REQUIRE(r.status == EvalStatus::estimate);
  CHECK(same_bits(*r.value, *eval_n4_closed_real(-0.7, -0.7).value));
  CHECK(r.value->real() == doctest::Approx(oracle::veneziano(-0.7, -0.7)).epsilon(1e-12));
  const EvalResult c = partition_function(g, Field::C, ps);
  CHECK(same_bits(*c.value, *eval_n4_closed_complex(-0.7, -0.7).value));
}

TEST_CASE("partition function outside the window diverges") {
  PartitionSettings ps;
  ps.real.mode = EvalMode::closed;
  CHECK(partition_function({4, {1, -1, 1}, 0.4}, Field::R, ps).status == EvalStatus::diverged_by_domain);
  CHECK(partition_function({4, {1, -1, 1}, 0.5}, Field::R, ps).status == EvalStatus::boundary);
  CHECK(partition_function({4, {1, 1, 1}, 0.7}, Field::Qp, ps).status == EvalStatus::diverged_by_domain);
}

TEST_CASE("partition function over Q_p composes with the closed form") {
  PartitionSettings ps;
  ps.p = 3;
  const EvalResult r = partition_function({4, {1, -1, 1}, 0.7}, Field::Qp, ps);
  CHECK(same_bits(*r.value, *eval_n4_padic(3, -0.7, -0.7).value));
  PadicParams prm;
  prm.p = 5;
  prm.s = charges_to_s({5, {1, -1, 1, -1}, 0.45});
  ps.p = 5;
  const EvalResult t = partition_function({5, {1, -1, 1, -1}, 0.45}, Field::Qp, ps);
  CHECK(same_bits(*t.value, *eval_padic_tree(prm).value));
}

TEST_CASE("partition function by Monte Carlo is the evaluator on the same exponents") {
  PartitionSettings ps;
  ps.real.mode = EvalMode::mc;
  ps.real.samples_per_sector = 20000;
  ps.real.groups = 8;
  ps.real.seed = 3;
  const GasSpec g{4, {1, -1, 1}, 0.7};
  const EvalResult a = partition_function(g, Field::R, ps);
  const EvalResult b = evaluate(charges_to_s(g), Field::R, ps.real);
  REQUIRE(a.status == EvalStatus::estimate);
  CHECK(same_bits(*a.value, *b.value));
}
