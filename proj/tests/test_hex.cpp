#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hexnav/hex.hpp"
#include "hexnav/rng.hpp"
#include "oracles.hpp"

using namespace hexnav;
namespace oracle = hexnav::testing;

namespace {

HexCoord random_cell(Rng& rng, int span) {
  const int i = rng.uniform_int(span) - span / 2;
  const int par = ((i % 2) + 2) % 2;
  int j = rng.uniform_int(span) - span / 2;
  if ((((j % 2) + 2) % 2) != par) ++j;
  return {i, j};
}

}  // namespace

TEST_CASE("neighbors of (4,4) in direction order") {
  const auto n = neighbors({4, 4});
  CHECK(n[0] == std::pair{AbsDir::N, HexCoord{2, 4}});
  CHECK(n[1] == std::pair{AbsDir::NE, HexCoord{3, 5}});
  CHECK(n[2] == std::pair{AbsDir::SE, HexCoord{5, 5}});
  CHECK(n[3] == std::pair{AbsDir::S, HexCoord{6, 4}});
  CHECK(n[4] == std::pair{AbsDir::SW, HexCoord{5, 3}});
  CHECK(n[5] == std::pair{AbsDir::NW, HexCoord{3, 3}});
}

TEST_CASE("neighbors are unclipped and preserve parity") {
  const auto n = neighbors({0, 0});
  CHECK(n[0].second == HexCoord{-2, 0});
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const HexCoord c = random_cell(rng, 100);
    REQUIRE(valid_parity(c));
    for (const auto& [d, nxt] : neighbors(c)) CHECK(valid_parity(nxt));
  }
}

TEST_CASE("step_distance closed form") {
  CHECK(step_distance({0, 0}, {0, 0}) == 0);
  CHECK(step_distance({0, 0}, {2, 0}) == 1);
  CHECK(step_distance({0, 0}, {0, 4}) == 4);
}

TEST_CASE("step_distance equals lattice BFS") {
  Rng rng(23);
  for (int t = 0; t < 400; ++t) {
    const HexCoord a = random_cell(rng, 50);
    const HexCoord b = random_cell(rng, 50);
    CHECK(step_distance(a, b) == oracle::bfs_lattice_distance(a, b));
  }
}

TEST_CASE("step_distance metric axioms") {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const HexCoord a = random_cell(rng, 60);
    const HexCoord b = random_cell(rng, 60);
    const HexCoord c = random_cell(rng, 60);
    CHECK(step_distance(a, b) == step_distance(b, a));
    CHECK((step_distance(a, b) == 0) == (a == b));
    CHECK(step_distance(a, c) <= step_distance(a, b) + step_distance(b, c));
  }
}

TEST_CASE("k_ring K=1 is the neighbor set") {
  const auto ring = k_ring({0, 0}, 1);
  std::set<HexCoord> got(ring.begin(), ring.end());
  std::set<HexCoord> want;
  for (const auto& [d, n] : neighbors({0, 0})) want.insert(n);
  CHECK(got == want);
}

TEST_CASE("k_ring K=2 exact cells") {
  const int i = 10, j = 4;
  const auto ring = k_ring({i, j}, 2);
  REQUIRE(ring.size() == 12);
  const std::set<HexCoord> got(ring.begin(), ring.end());
  const std::set<HexCoord> want{
      {i - 4, j},     {i - 3, j + 1}, {i - 2, j + 2}, {i, j + 2},
      {i + 2, j + 2}, {i + 3, j + 1}, {i + 4, j},     {i + 3, j - 1},
      {i + 2, j - 2}, {i, j - 2},     {i - 2, j - 2}, {i - 3, j - 1}};
  CHECK(got == want);
}

TEST_CASE("k_ring members sit at exactly distance K") {
  const auto ring = k_ring({0, 0}, 3);
  REQUIRE(ring.size() == 18);
  for (const auto& c : ring) {
    CHECK(step_distance({0, 0}, c) == 3);
    CHECK(oracle::bfs_lattice_distance({0, 0}, c) == 3);
  }
}

TEST_CASE("k_ring cardinality and parity for K up to 5") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const HexCoord c = random_cell(rng, 80);
    for (int k = 1; k <= 5; ++k) {
      const auto ring = k_ring(c, k);
      CHECK(ring.size() == static_cast<std::size_t>(6 * k));
      const std::set<HexCoord> uniq(ring.begin(), ring.end());
      CHECK(uniq.size() == ring.size());
      for (const auto& m : ring) CHECK(valid_parity(m));
    }
  }
  CHECK_THROWS_AS((void)k_ring({0, 0}, 0), std::invalid_argument);
}

TEST_CASE("rasterize_dims reproduces the single-room grid") {
  CHECK(rasterize_dims(465, 458, 15.8) == std::pair{35, 19});
}

TEST_CASE("rasterize_dims is exact on exact inputs") {
  const double a = 2.0;
  const double rows_extent = (37 - 1) * std::sqrt(3.0) / 2.0 * a;
  const double cols_extent = (21 + 1) * 1.5 * a - a;
  CHECK(rasterize_dims(rows_extent, cols_extent, a) == std::pair{37, 21});
}

TEST_CASE("rasterize_dims recovers the multi-room grid from a back-solved edge") {
  // 87 rows want a = 1640/(86*sqrt(3)/2) ~ 22.02; 59 cols want ~ 22.02 too.
  CHECK(rasterize_dims(1640, 1960, 22.02) == std::pair{87, 59});
}

TEST_CASE("rasterize_dims rejects non-positive inputs") {
  CHECK_THROWS_AS((void)rasterize_dims(0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)rasterize_dims(10, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)rasterize_dims(10, 10, 0), std::invalid_argument);
}

TEST_CASE("cell_center examples") {
  CHECK(cell_center({0, 0}, 5.0) == std::pair{0.0, 0.0});
  const auto [x1, y1] = cell_center({2, 0}, 1.0);
  CHECK(x1 == doctest::Approx(0.0));
  CHECK(y1 == doctest::Approx(std::sqrt(3.0)));
  const auto [x2, y2] = cell_center({1, 1}, 1.0);
  CHECK(x2 == doctest::Approx(1.5));
  CHECK(y2 == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("neighbor centers are equidistant at sqrt(3)*a") {
  Rng rng(99);
  const double a = 15.8;
  const double want = std::sqrt(3.0) * a;
  for (int t = 0; t < 300; ++t) {
    const HexCoord c = random_cell(rng, 60);
    const auto [cx, cy] = cell_center(c, a);
    for (const auto& [d, n] : neighbors(c)) {
      const auto [nx, ny] = cell_center(n, a);
      const double got = std::hypot(nx - cx, ny - cy);
      CHECK(std::abs(got - want) <= 1e-9 * want);
    }
  }
}

TEST_CASE("direction_between inverts neighbor") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const HexCoord c = random_cell(rng, 40);
    for (int d = 0; d < kNumDirs; ++d) {
      const auto dir = static_cast<AbsDir>(d);
      CHECK(direction_between(c, neighbor(c, dir)) == dir);
    }
    CHECK(!direction_between(c, {c.i + 4, c.j}));
  }
}
