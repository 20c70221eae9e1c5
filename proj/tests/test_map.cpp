#include <doctest.h>

#include <sstream>
#include <string>

#include "hexnav/map.hpp"
#include "hexnav/mapgen.hpp"

using namespace hexnav;

TEST_CASE("load_map applies the offset-to-doubled mapping") {
  const HexMap map = load_map("B.\n.G\n");
  CHECK(map.rows() == 2);
  CHECK(map.cols() == 2);
  CHECK(map.start() == HexCoord{0, 0});
  CHECK(map.goal() == HexCoord{3, 1});
  CHECK(map.passable({0, 0}));
  CHECK(map.passable({1, 1}));
  CHECK(map.passable({2, 0}));
  CHECK(map.passable({3, 1}));
  CHECK(!map.in_bounds({4, 0}));
  CHECK(!map.in_bounds({0, 1}));  // parity mismatch
}

TEST_CASE("load_map reads headers") {
  const HexMap map = load_map("# name: demo\n# edge_cm: 15.8\nB#\n?G\n");
  CHECK(map.name() == "demo");
  CHECK(map.edge_cm() == doctest::Approx(15.8));
  CHECK(map.kind({1, 1}) == CellKind::Obstacle);
  CHECK(map.kind({2, 0}) == CellKind::Unknown);
  CHECK(!map.passable({2, 0}));  // unknown behaves as obstacle
}

TEST_CASE("load_map errors name the position") {
  CHECK_THROWS_WITH_AS((void)load_map("B.\n..\n"), doctest::Contains("missing goal"),
                       MapParseError);
  CHECK_THROWS_WITH_AS((void)load_map(".G\n..\n"), doctest::Contains("missing start"),
                       MapParseError);
  CHECK_THROWS_WITH_AS((void)load_map("BB\n.G\n"), doctest::Contains("duplicate start"),
                       MapParseError);
  CHECK_THROWS_WITH_AS((void)load_map("BG\nG.\n"), doctest::Contains("duplicate goal"),
                       MapParseError);

  try {
    (void)load_map("B.\n.x\n");
    FAIL("expected MapParseError");
  } catch (const MapParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() == 2);
    CHECK(std::string(e.what()).find("unknown character") != std::string::npos);
  }

  CHECK_THROWS_WITH_AS((void)load_map("B.\n.G.\n"),
                       doctest::Contains("line length"), MapParseError);
  CHECK_THROWS_WITH_AS((void)load_map("B. \n.G \n"),
                       doctest::Contains("whitespace"), MapParseError);
  CHECK_THROWS_WITH_AS((void)load_map("# foo: 1\nB.\n.G\n"),
                       doctest::Contains("unknown header key"), MapParseError);
  CHECK_THROWS_AS((void)load_map(""), MapParseError);
  CHECK_THROWS_AS((void)load_map("# edge_cm: -3\nB.\n.G\n"), std::exception);
}

TEST_CASE("single-cell map cannot hold both endpoints") {
  CHECK_THROWS_AS((void)load_map("B"), MapParseError);
}

TEST_CASE("render_ascii is the inverse of load_map") {
  const std::string canonical = "# name: t\n# edge_cm: 2.5\nB..\n.#.\n..G\n";
  const HexMap map = load_map(canonical);
  CHECK(render_ascii(map) == canonical);

  const std::string plain = "B..\n...\n..G\n";
  CHECK(render_ascii(load_map(plain)) == plain);
}

TEST_CASE("load_map after render_ascii is identity on generated maps") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const HexMap map = random_room(9, 8, 0.2, seed);
    const HexMap back = load_map(render_ascii(map));
    CHECK(back == map);
  }
}

TEST_CASE("empty-obstacle map renders only dots and endpoints") {
  const HexMap map = generate_preset("room-35x19-open", 0);
  std::istringstream in(render_ascii(map));
  std::string line;
  int grid_lines = 0;
  while (std::getline(in, line)) {
    if (line.starts_with("# ")) continue;
    ++grid_lines;
    for (char ch : line) CHECK((ch == '.' || ch == 'B' || ch == 'G'));
  }
  CHECK(grid_lines == 35);
}

TEST_CASE("free_cells and counts agree") {
  const HexMap map = load_map("B#.\n..G\n");
  CHECK(map.free_count() == 5);
  CHECK(map.free_cells().size() == 5);
}
