#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hexnav/hex.hpp"

namespace hexnav {

enum class CellKind : std::uint8_t { Free, Obstacle, Unknown };

// Parse failure with the offending position (1-based line, 1-based column;
// column 0 when the whole line is at fault).
class MapParseError : public std::runtime_error {
 public:
  MapParseError(std::string msg, int line, int col)
      : std::runtime_error(std::move(msg)), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Domain failures (unreachable goals, enclosed starts, ...).
class NavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rectangular hexagonal occupancy lattice. Cells live on the doubled lattice
// with i = 2r + (c mod 2), j = c for file row r and column c, so i + j is
// always even. Unknown cells block traversal exactly like obstacles.
// Immutable after construction.
class HexMap {
 public:
  HexMap(int rows, int cols, std::vector<CellKind> cells, HexCoord start,
         HexCoord goal, std::string name = {}, std::string edge_cm_text = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int cell_count() const { return rows_ * cols_; }

  bool in_bounds(HexCoord c) const {
    return c.j >= 0 && c.j < cols_ && c.i >= 0 && c.i < 2 * rows_ &&
           (c.i & 1) == (c.j & 1);
  }

  CellKind kind(HexCoord c) const { return cells_[index_of(c)]; }

  // In bounds and Free; start and goal cells are Free.
  bool passable(HexCoord c) const {
    return in_bounds(c) && cells_[index_of(c)] == CellKind::Free;
  }

  HexCoord start() const { return start_; }
  HexCoord goal() const { return goal_; }

  // Dense cell index (file row-major); valid for in-bounds coords only.
  int index_of(HexCoord c) const { return (c.i >> 1) * cols_ + c.j; }
  HexCoord coord_of(int index) const {
    const int r = index / cols_;
    const int c = index % cols_;
    return {2 * r + (c & 1), c};
  }

  int free_count() const { return free_count_; }
  std::vector<HexCoord> free_cells() const;

  const std::string& name() const { return name_; }
  std::optional<double> edge_cm() const { return edge_cm_; }
  const std::string& edge_cm_text() const { return edge_cm_text_; }

  friend bool operator==(const HexMap& a, const HexMap& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_ &&
           a.start_ == b.start_ && a.goal_ == b.goal_ && a.name_ == b.name_ &&
           a.edge_cm_text_ == b.edge_cm_text_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<CellKind> cells_;
  HexCoord start_;
  HexCoord goal_;
  int free_count_ = 0;
  std::string name_;
  std::string edge_cm_text_;
  std::optional<double> edge_cm_;
};

// Parse a ".hexmap" document: optional "# key: value" header lines (keys
// name, edge_cm), then rows of {'.', '#', '?', 'B', 'G'} with equal length.
HexMap load_map(std::string_view text);
HexMap load_map_file(const std::string& path);

// Inverse of load_map on canonical documents (headers first, name before
// edge_cm, LF line endings).
std::string render_ascii(const HexMap& map);

}  // namespace hexnav
