#include "hexnav/map.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hexnav {

namespace {

std::string position_msg(const std::string& what, int line, int col) {
  std::ostringstream os;
  os << what << " (line " << line;
  if (col > 0) os << ", column " << col;
  os << ")";
  return os.str();
}

[[noreturn]] void fail(const std::string& what, int line, int col = 0) {
  throw MapParseError(position_msg(what, line, col), line, col);
}

}  // namespace

HexMap::HexMap(int rows, int cols, std::vector<CellKind> cells, HexCoord start,
               HexCoord goal, std::string name, std::string edge_cm_text)
    : rows_(rows),
      cols_(cols),
      cells_(std::move(cells)),
      start_(start),
      goal_(goal),
      name_(std::move(name)),
      edge_cm_text_(std::move(edge_cm_text)) {
  if (rows_ < 1 || cols_ < 1 ||
      cells_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw std::invalid_argument("HexMap: inconsistent dimensions");
  }
  if (!passable(start_) || !passable(goal_)) {
    throw std::invalid_argument("HexMap: start and goal must be free cells");
  }
  if (start_ == goal_) {
    throw std::invalid_argument("HexMap: start and goal must be distinct");
  }
  free_count_ = static_cast<int>(
      std::count(cells_.begin(), cells_.end(), CellKind::Free));
  if (!edge_cm_text_.empty()) {
    double v = 0.0;
    const char* b = edge_cm_text_.data();
    const char* e = b + edge_cm_text_.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || v <= 0) {
      throw std::invalid_argument("HexMap: bad edge_cm value");
    }
    edge_cm_ = v;
  }
}

std::vector<HexCoord> HexMap::free_cells() const {
  std::vector<HexCoord> out;
  out.reserve(static_cast<std::size_t>(free_count_));
  for (int idx = 0; idx < cell_count(); ++idx) {
    if (cells_[idx] == CellKind::Free) out.push_back(coord_of(idx));
  }
  return out;
}

HexMap load_map(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }

  std::string name;
  std::string edge_text;
  std::size_t first_grid = 0;
  for (; first_grid < lines.size(); ++first_grid) {
    const std::string_view line = lines[first_grid];
    if (!line.starts_with("# ")) break;
    const int lineno = static_cast<int>(first_grid) + 1;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      fail("malformed header, expected '# key: value'", lineno);
    }
    std::string_view key = line.substr(2, colon - 2);
    std::string_view value = line.substr(colon + 1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (value.empty() || value.back() == ' ' || value.back() == '\r') {
      fail("header value has trailing whitespace or is empty", lineno);
    }
    if (key == "name") {
      name.assign(value);
    } else if (key == "edge_cm") {
      edge_text.assign(value);
    } else {
      fail("unknown header key '" + std::string(key) + "'", lineno);
    }
  }

  std::vector<std::string_view> grid(lines.begin() + first_grid, lines.end());
  // A single trailing newline leaves one empty pseudo-line; drop it.
  if (!grid.empty() && grid.back().empty()) grid.pop_back();
  if (grid.empty()) fail("empty map", static_cast<int>(first_grid) + 1);

  const int rows = static_cast<int>(grid.size());
  const int cols = static_cast<int>(grid.front().size());
  std::vector<CellKind> cells(static_cast<std::size_t>(rows) * cols,
                              CellKind::Free);
  std::optional<HexCoord> start;
  std::optional<HexCoord> goal;
  for (int r = 0; r < rows; ++r) {
    const std::string_view line = grid[r];
    const int lineno = static_cast<int>(first_grid) + r + 1;
    if (static_cast<int>(line.size()) != cols) {
      fail("line length differs from first grid line", lineno);
    }
    for (int c = 0; c < cols; ++c) {
      const char ch = line[c];
      const HexCoord coord{2 * r + (c & 1), c};
      const int idx = r * cols + c;
      switch (ch) {
        case '.':
          break;
        case '#':
          cells[idx] = CellKind::Obstacle;
          break;
        case '?':
          cells[idx] = CellKind::Unknown;
          break;
        case 'B':
          if (start) fail("duplicate start 'B'", lineno, c + 1);
          start = coord;
          break;
        case 'G':
          if (goal) fail("duplicate goal 'G'", lineno, c + 1);
          goal = coord;
          break;
        default:
          if (ch == ' ' || ch == '\t' || ch == '\r') {
            fail("trailing whitespace is forbidden", lineno, c + 1);
          }
          fail(std::string("unknown character '") + ch + "'", lineno, c + 1);
      }
    }
  }
  const int last_line = static_cast<int>(first_grid) + rows;
  if (!start) fail("missing start", last_line);
  if (!goal) fail("missing goal", last_line);
  return HexMap(rows, cols, std::move(cells), *start, *goal, std::move(name),
                std::move(edge_text));
}

HexMap load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NavError("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str());
}

std::string render_ascii(const HexMap& map) {
  std::string out;
  if (!map.name().empty()) {
    out += "# name: " + map.name() + "\n";
  }
  if (!map.edge_cm_text().empty()) {
    out += "# edge_cm: " + map.edge_cm_text() + "\n";
  }
  for (int r = 0; r < map.rows(); ++r) {
    for (int c = 0; c < map.cols(); ++c) {
      const HexCoord coord{2 * r + (c & 1), c};
      char ch = '.';
      if (coord == map.start()) {
        ch = 'B';
      } else if (coord == map.goal()) {
        ch = 'G';
      } else {
        switch (map.kind(coord)) {
          case CellKind::Free:
            ch = '.';
            break;
          case CellKind::Obstacle:
            ch = '#';
            break;
          case CellKind::Unknown:
            ch = '?';
            break;
        }
      }
      out += ch;
    }
    out += '\n';
  }
  return out;
}

}  // namespace hexnav
