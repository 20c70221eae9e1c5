#include "hexnav/mapgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hexnav/planners.hpp"
#include "hexnav/rng.hpp"
#include "hexnav/rules.hpp"

namespace hexnav {

namespace {

struct GridBuilder {
  int rows;
  int cols;
  std::vector<CellKind> cells;

  GridBuilder(int r, int c)
      : rows(r), cols(c),
        cells(static_cast<std::size_t>(r) * c, CellKind::Free) {}

  void set(int r, int c, CellKind k) {
    if (r >= 0 && r < rows && c >= 0 && c < cols) {
      cells[static_cast<std::size_t>(r) * cols + c] = k;
    }
  }

  void fill_rect(int r0, int c0, int r1, int c1, CellKind k) {
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) set(r, c, k);
    }
  }

  void clear_near(int r0, int c0, int radius) {
    fill_rect(r0 - radius, c0 - radius, r0 + radius, c0 + radius,
              CellKind::Free);
  }

  HexMap to_map(std::string name, std::string edge_text) const {
    return to_map_with_goal(std::move(name), std::move(edge_text), {0, 0});
  }

  // Goal may sit anywhere; start is always the bottom-right corner.
  HexMap to_map_with_goal(std::string name, std::string edge_text,
                          HexCoord goal) const {
    const HexCoord start{2 * (rows - 1) + ((cols - 1) & 1), cols - 1};
    auto grid = cells;
    grid[static_cast<std::size_t>(rows - 1) * cols + (cols - 1)] = CellKind::Free;
    grid[static_cast<std::size_t>(goal.i >> 1) * cols + goal.j] = CellKind::Free;
    return HexMap(rows, cols, std::move(grid), start, goal, std::move(name),
                  std::move(edge_text));
  }
};

bool usable(const HexMap& map) {
  if (!bfs_shortest(map)) return false;
  try {
    (void)wall_follow(map, Hand::Left);
    (void)wall_follow(map, Hand::Right);
  } catch (const NavError&) {
    return false;
  }
  return true;
}

bool pledge_reaches_goal(const HexMap& map, const RegionMask* allowed) {
  for (const Chirality ch :
       {Chirality::Counterclockwise, Chirality::Clockwise}) {
    PledgeState st{0, AbsDir::N, ch};
    HexCoord pos = map.start();
    long cap = 10L * map.free_count();
    bool ok = false;
    while (cap-- > 0) {
      auto [a, next] = pledge_action(map, allowed, pos, st);
      st = next;
      pos = neighbor(pos, a);
      if (pos == map.goal()) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

// Presets feed the full pipeline, so a usable layout must also let the
// Pledge phase reach the goal, both on the raw map and inside the closed
// region of the reduced trajectories.
bool usable_preset(const HexMap& map, int k) {
  if (!usable(map)) return false;
  const Trajectory left = reduce_up_to(map, wall_follow(map, Hand::Left), k);
  const Trajectory right = reduce_up_to(map, wall_follow(map, Hand::Right), k);
  const RegionMask region = closed_region(map, left, right);
  return pledge_reaches_goal(map, nullptr) && pledge_reaches_goal(map, &region);
}

// Obstacle bands reach in from alternating sides, leaving a winding main
// corridor, and comb teeth hang off the bands so dead-end pockets line the
// corridor. Undirected exploration keeps falling into the pockets, while
// the reduced trajectories shortcut their mouths and the closed region
// seals them off. Bands and teeth join the walls, so the whole obstacle
// set is one wall component and both hand tours trace it cleanly.
void carve_band_and_comb_room(GridBuilder& g, int bands, Rng& rng) {
  const int rows = g.rows;
  const int cols = g.cols;
  const int gap = 4 + rng.uniform_int(2);
  std::vector<int> band_rows;
  for (int b = 0; b < bands; ++b) {
    const int r0 = (b + 1) * rows / (bands + 1);
    band_rows.push_back(r0);
    const int span = cols - gap;
    if (b % 2 == 0) {
      g.fill_rect(r0, 0, r0 + 1, span - 1, CellKind::Obstacle);
    } else {
      g.fill_rect(r0, cols - span, r0 + 1, cols - 1, CellKind::Obstacle);
    }
  }
  std::vector<int> ceilings{-2};
  ceilings.insert(ceilings.end(), band_rows.begin(), band_rows.end());
  const int pitch = 3;
  for (std::size_t ci = 0; ci < ceilings.size(); ++ci) {
    const int top = ceilings[ci] + 2;
    const int bottom =
        (ci + 1 < ceilings.size() ? ceilings[ci + 1] : rows) - 2;
    if (bottom - top < 2) continue;
    for (int c = 2 + rng.uniform_int(2); c < cols - 2; c += pitch) {
      g.fill_rect(top, c, bottom, c, CellKind::Obstacle);
    }
  }
}

HexMap obstacle_room(int rows, int cols, std::string name,
                     std::string edge_text, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 300; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    GridBuilder g(rows, cols);
    carve_band_and_comb_room(g, 3, rng);
    g.clear_near(0, 0, 1);
    g.clear_near(rows - 1, cols - 1, 1);
    HexMap map = g.to_map(name, edge_text);
    if (usable_preset(map, 3)) return map;
  }
  throw NavError("obstacle_room: no usable layout for this seed");
}

// Two wings split by a central wall with a single door, each wing cut into
// room levels by partial walls whose free ends alternate sides, comb teeth
// lining every room. Start is the bottom-right corner, goal the top-left.
// A single door keeps the closed region simply connected; with two doors it
// becomes an annulus around the wall chunk between them and the Pledge
// orbit can circle the hole without ever passing the goal pinch.
HexMap multiroom(int rows, int cols, std::string name, std::string edge_text,
                 std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 300; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    GridBuilder g(rows, cols);

    const int wall_col = cols / 2;
    g.fill_rect(0, wall_col, rows - 1, wall_col + 1, CellKind::Obstacle);
    const int door = rows / 2 - 4 + rng.uniform_int(9);
    g.fill_rect(door - 2, wall_col, door + 2, wall_col + 1, CellKind::Free);

    const int bands = 7;
    const int gap = 8;
    std::vector<int> band_rows;
    for (int b = 0; b < bands; ++b) {
      const int r0 = (b + 1) * rows / (bands + 1);
      band_rows.push_back(r0);
      if (b % 2 == 0) {
        g.fill_rect(r0, 0, r0 + 1, wall_col - gap - 1, CellKind::Obstacle);
        g.fill_rect(r0, wall_col + 2 + gap, r0 + 1, cols - 1, CellKind::Obstacle);
      } else {
        g.fill_rect(r0, gap, r0 + 1, wall_col - 1, CellKind::Obstacle);
        g.fill_rect(r0, wall_col + 2, r0 + 1, cols - 1 - gap, CellKind::Obstacle);
      }
    }

    std::vector<int> ceilings{-2};
    ceilings.insert(ceilings.end(), band_rows.begin(), band_rows.end());
    const int pitch = 4;
    for (std::size_t ci = 0; ci < ceilings.size(); ++ci) {
      const int top = ceilings[ci] + 2;
      const int bottom =
          (ci + 1 < ceilings.size() ? ceilings[ci + 1] : rows) - 2;
      if (bottom - top < 2) continue;
      for (int c = 2 + rng.uniform_int(2); c < cols - 2; c += pitch) {
        if (c >= wall_col - 2 && c <= wall_col + 3) continue;  // door lane
        g.fill_rect(top, c, bottom, c, CellKind::Obstacle);
      }
    }

    g.clear_near(rows - 1, cols - 1, 1);
    g.clear_near(0, 0, 1);
    HexMap map = g.to_map(name, edge_text);
    if (usable_preset(map, 3)) return map;
  }
  throw NavError("multiroom: no usable layout for this seed");
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"room-35x19-open", "room-35x19-obstacles", "multiroom-87x59"};
}

HexMap generate_preset(std::string_view preset, std::uint64_t seed) {
  if (preset == "room-35x19-open") {
    GridBuilder g(35, 19);
    return g.to_map("room-35x19-open", "15.8");
  }
  if (preset == "room-35x19-obstacles") {
    return obstacle_room(35, 19, "room-35x19-obstacles", "15.8", seed);
  }
  if (preset == "multiroom-87x59") {
    return multiroom(87, 59, "multiroom-87x59", "22.02", seed);
  }
  throw std::invalid_argument("unknown preset: " + std::string(preset));
}

HexMap random_room(int rows, int cols, double density, std::uint64_t seed,
                   bool clear_border) {
  if (rows < 3 || cols < 3 || density < 0 || density >= 1) {
    throw std::invalid_argument("random_room: bad arguments");
  }
  for (std::uint64_t attempt = 0; attempt < 500; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    GridBuilder g(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (rng.uniform01() < density) g.set(r, c, CellKind::Obstacle);
      }
    }
    if (clear_border) {
      g.fill_rect(0, 0, 0, cols - 1, CellKind::Free);
      g.fill_rect(rows - 1, 0, rows - 1, cols - 1, CellKind::Free);
      g.fill_rect(0, 0, rows - 1, 0, CellKind::Free);
      g.fill_rect(0, cols - 1, rows - 1, cols - 1, CellKind::Free);
    }
    g.clear_near(0, 0, 1);
    g.clear_near(rows - 1, cols - 1, 1);
    HexMap map = g.to_map("", "");
    if (usable(map)) return map;
  }
  throw NavError("random_room: no usable layout for this seed");
}

}  // namespace hexnav
