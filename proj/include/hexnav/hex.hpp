#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace hexnav {

// Cell identity in the doubled coordinate system: i is the (doubled) row
// index, j the column index. Rows grow southward, columns eastward, and
// every valid cell has i + j even; each of the six moves preserves that
// parity.
struct HexCoord {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const HexCoord&, const HexCoord&) = default;
};

// Absolute directions, clockwise from north.
enum class AbsDir : int { N = 0, NE = 1, SE = 2, S = 3, SW = 4, NW = 5 };

inline constexpr int kNumDirs = 6;

// Coordinate offsets by AbsDir: N, NE, SE, S, SW, NW.
inline constexpr std::array<HexCoord, 6> kDirOffset{{
    {-2, 0}, {-1, 1}, {1, 1}, {2, 0}, {1, -1}, {-1, -1},
}};

constexpr bool valid_parity(HexCoord c) {
  return ((c.i + c.j) % 2 + 2) % 2 == 0;
}

constexpr HexCoord neighbor(HexCoord c, AbsDir d) {
  const HexCoord off = kDirOffset[static_cast<std::size_t>(d)];
  return {c.i + off.i, c.j + off.j};
}

constexpr AbsDir rotated(AbsDir d, int steps) {
  return static_cast<AbsDir>(((static_cast<int>(d) + steps) % 6 + 6) % 6);
}

// The six neighbors in AbsDir order 0..5, regardless of any map bounds.
std::array<std::pair<AbsDir, HexCoord>, 6> neighbors(HexCoord c);

// Minimum number of moves between two cells on the unbounded, obstacle-free
// lattice: |dj| column moves plus whatever pure-vertical moves remain.
int step_distance(HexCoord a, HexCoord b);

// The 6K cells at step distance exactly K from c, built as the six corner
// cells K moves out plus K-1 interpolated cells along each ring edge.
std::vector<HexCoord> k_ring(HexCoord c, int k);

// Grid dimensions (rows, cols) for a physical map. The first extent drives
// the row count via the sqrt(3)/2 row pitch, the second the column count via
// the 3/2 column pitch; both round to nearest with halves away from zero.
std::pair<int, int> rasterize_dims(double extent1_cm, double extent2_cm,
                                   double edge_cm);

// Planar center of a cell for edge length a: x = 1.5*a*j, y = (sqrt(3)/2)*a*i.
// All six neighbor centers sit at distance sqrt(3)*a.
std::pair<double, double> cell_center(HexCoord c, double edge_cm);

// Direction that moves `from` to `to` in one step, if they are adjacent.
std::optional<AbsDir> direction_between(HexCoord from, HexCoord to);

}  // namespace hexnav

template <>
struct std::hash<hexnav::HexCoord> {
  std::size_t operator()(const hexnav::HexCoord& c) const noexcept {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.i)) << 32) |
        static_cast<std::uint32_t>(c.j));
  }
};
