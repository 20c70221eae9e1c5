#include "hexnav/hex.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace hexnav {

std::array<std::pair<AbsDir, HexCoord>, 6> neighbors(HexCoord c) {
  std::array<std::pair<AbsDir, HexCoord>, 6> out;
  for (int d = 0; d < kNumDirs; ++d) {
    out[d] = {static_cast<AbsDir>(d), neighbor(c, static_cast<AbsDir>(d))};
  }
  return out;
}

int step_distance(HexCoord a, HexCoord b) {
  const int di = std::abs(a.i - b.i);
  const int dj = std::abs(a.j - b.j);
  return dj + std::max(0, (di - dj) / 2);
}

std::vector<HexCoord> k_ring(HexCoord c, int k) {
  if (k < 1) throw std::invalid_argument("k_ring: K must be >= 1");
  std::vector<HexCoord> out;
  out.reserve(static_cast<std::size_t>(6 * k));
  for (int d = 0; d < kNumDirs; ++d) {
    const HexCoord off = kDirOffset[d];
    HexCoord cur{c.i + k * off.i, c.j + k * off.j};
    // Walk the ring edge from this corner toward the next one.
    const HexCoord along = kDirOffset[(d + 2) % 6];
    for (int t = 0; t < k; ++t) {
      out.push_back(cur);
      cur.i += along.i;
      cur.j += along.j;
    }
  }
  return out;
}

std::pair<int, int> rasterize_dims(double extent1_cm, double extent2_cm,
                                   double edge_cm) {
  if (extent1_cm <= 0 || extent2_cm <= 0 || edge_cm <= 0) {
    throw std::invalid_argument("rasterize_dims: extents and edge must be positive");
  }
  const double rows = extent1_cm / (std::sqrt(3.0) / 2.0 * edge_cm) + 1.0;
  const double cols = (extent2_cm + edge_cm) / (1.5 * edge_cm) - 1.0;
  const long n = std::lround(rows);
  const long m = std::lround(cols);
  if (n < 1 || m < 1) {
    throw std::invalid_argument("rasterize_dims: grid would be empty");
  }
  return {static_cast<int>(n), static_cast<int>(m)};
}

std::pair<double, double> cell_center(HexCoord c, double edge_cm) {
  return {1.5 * edge_cm * c.j, std::sqrt(3.0) / 2.0 * edge_cm * c.i};
}

std::optional<AbsDir> direction_between(HexCoord from, HexCoord to) {
  for (int d = 0; d < kNumDirs; ++d) {
    if (neighbor(from, static_cast<AbsDir>(d)) == to) {
      return static_cast<AbsDir>(d);
    }
  }
  return std::nullopt;
}

}  // namespace hexnav
