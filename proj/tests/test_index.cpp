#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koba/index.hpp"
#include "koba/json_io.hpp"

using namespace koba;

TEST_CASE("index_set for N = 4 lists (1,2) then (3,2)") {
  const IndexSet idx = index_set(4);
  REQUIRE(idx.size() == 2);
  CHECK(idx[0] == PairIndex{1, 2});
  CHECK(idx[1] == PairIndex{3, 2});
}

TEST_CASE("index_set sizes") {
  CHECK(index_set(5).size() == 5);
  CHECK(index_set(6).size() == 9);
  for (int N = 4; N <= 20; ++N) CHECK(index_set(N).size() == static_cast<std::size_t>(N * (N - 3) / 2));
}

TEST_CASE("index_set rejects N < 4") {
  CHECK_THROWS_AS(index_set(3), std::invalid_argument);
  CHECK_THROWS_AS(index_set(0), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_svector(3, -0.5), std::invalid_argument);
}

TEST_CASE("canonical order for N = 6") {
  const IndexSet idx(6);
  std::vector<std::string> names;
  for (const auto& p : idx.pairs()) names.push_back(p.name());
  const std::vector<std::string> want{"s12", "s13", "s14", "s23", "s24", "s34", "s52", "s53", "s54"};
  CHECK(names == want);
}

TEST_CASE("role positions agree with position()") {
  for (int N = 4; N <= 12; ++N) {
    const IndexSet idx(N);
    for (int j = 2; j <= N - 2; ++j) {
      CHECK(idx.pos_zero(j) == idx.position(1, j));
      CHECK(idx.pos_one(j) == idx.position(N - 1, j));
      for (int i = 2; i < j; ++i) {
        CHECK(idx.pos_mobile(i, j) == idx.position(i, j));
        CHECK(idx.pos_mobile(j, i) == idx.position(i, j));
      }
    }
    for (std::size_t k = 0; k < idx.size(); ++k) CHECK(idx.position(idx[k]) == k);
  }
}

TEST_CASE("lookup ignores orientation") {
  SVector s(7);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = cplx(static_cast<double>(k), -1.0);
  const IndexSet& idx = s.index_set();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const PairIndex p = idx[k];
    CHECK(s(p.i, p.j) == s(p.j, p.i));
    CHECK(s(p.j, p.i) == s[k]);
  }
}

TEST_CASE("PairIndex::make rejects labels outside the index set") {
  CHECK_THROWS_AS(PairIndex::make(5, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(PairIndex::make(5, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(PairIndex::make(5, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(PairIndex::make(5, 0, 2), std::invalid_argument);
  CHECK(PairIndex::make(5, 2, 4) == PairIndex{4, 2});
  CHECK(PairIndex::make(5, 3, 2) == PairIndex{2, 3});
}

TEST_CASE("diagonal_svector fills every entry") {
  for (auto [N, v] : {std::pair{4, -0.6}, std::pair{5, -0.5}, std::pair{6, -0.45}}) {
    const SVector s = diagonal_svector(N, v);
    CHECK(s.size() == dimension(N));
    for (cplx x : s.values()) CHECK(x == cplx(v));
  }
}

TEST_CASE("SVector needs exactly d values") {
  CHECK_THROWS_AS(SVector(5, std::vector<cplx>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("swap_fixed_labels exchanges the two fixed blocks") {
  SVector s(5);
  s(1, 2) = 1.0;
  s(4, 2) = 2.0;
  s(2, 3) = 3.0;
  const SVector t = s.swap_fixed_labels();
  CHECK(t(1, 2) == cplx(2.0));
  CHECK(t(4, 2) == cplx(1.0));
  CHECK(t(2, 3) == cplx(3.0));
  CHECK(t.swap_fixed_labels() == s);
}

TEST_CASE("JSON round trip") {
  SVector s(6);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = cplx(-0.1 * static_cast<double>(k), 0.25);
  const auto j = io::svector_to_json(s);
  CHECK(j["N"] == 6);
  CHECK(j["s"].size() == 9);
  CHECK(j["s"][6]["i"] == 5);
  CHECK(io::svector_from_json(j) == s);
}

TEST_CASE("JSON accepts any entry order and the N = 4 shorthand") {
  const auto j = io::json::parse(R"({"N":4,"s":[{"i":2,"j":3,"re":-0.7},{"i":2,"j":1,"re":-0.6,"im":0.5}]})");
  const SVector s = io::svector_from_json(j);
  CHECK(s(1, 2) == cplx(-0.6, 0.5));
  CHECK(s(3, 2) == cplx(-0.7));
  const SVector t = io::svector_from_json(io::json::parse(R"({"s12":-0.6,"s32":{"re":-0.7,"im":0}})"));
  CHECK(t(1, 2) == cplx(-0.6));
  CHECK(t(3, 2) == cplx(-0.7));
}

TEST_CASE("JSON rejects missing, duplicate and foreign labels") {
  using io::json;
  CHECK_THROWS_AS(io::svector_from_json(json::parse(R"({"N":4,"s":[{"i":1,"j":2,"re":0}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::svector_from_json(json::parse(R"({"N":4,"s":[{"i":1,"j":2,"re":0},{"i":2,"j":1,"re":0}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::svector_from_json(json::parse(R"({"N":4,"s":[{"i":1,"j":2,"re":0},{"i":1,"j":3,"re":0}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::svector_from_json(json::parse(R"({"s12":-0.6})")), std::invalid_argument);
  CHECK_THROWS_AS(io::svector_from_json(json::parse(R"({"s12":-0.6,"s32":-0.6,"s13":0})")), std::invalid_argument);
}
