#include "hexnav/rules.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace hexnav {

namespace {

constexpr std::array<RelAction, 6> kRightScan{RelAction::RF, RelAction::F,
                                              RelAction::LF, RelAction::LR,
                                              RelAction::R,  RelAction::RR};
constexpr std::array<RelAction, 6> kLeftScan{RelAction::LF, RelAction::F,
                                             RelAction::RF, RelAction::RR,
                                             RelAction::R,  RelAction::LR};
// Theta-0 scans: straight first, then deviate away from the hand side.
constexpr std::array<RelAction, 6> kTheta0Ccw{RelAction::F,  RelAction::LF,
                                              RelAction::LR, RelAction::R,
                                              RelAction::RR, RelAction::RF};
constexpr std::array<RelAction, 6> kTheta0Cw{RelAction::F,  RelAction::RF,
                                             RelAction::RR, RelAction::R,
                                             RelAction::LR, RelAction::LF};

bool passable_in(const HexMap& map, const RegionMask* allowed, HexCoord c) {
  return map.passable(c) && (allowed == nullptr || allowed->contains(c));
}

// Signed turn in 60-degree units for a clockwise delta of `d` steps. The
// rear move is ambiguous; the scan that produced it decides the sign.
int signed_turn(int d, bool from_theta0_scan) {
  switch (d) {
    case 0: return 0;
    case 1: return 1;
    case 2: return 2;
    case 3: return from_theta0_scan ? -3 : 3;
    case 4: return -2;
    case 5: return -1;
    default: throw std::logic_error("signed_turn: bad delta");
  }
}

}  // namespace

RegionMask RegionMask::all_free(const HexMap& map) {
  RegionMask mask(map.rows(), map.cols());
  for (int idx = 0; idx < map.cell_count(); ++idx) {
    const HexCoord c = map.coord_of(idx);
    if (map.passable(c)) mask.insert(c);
  }
  return mask;
}

int RegionMask::size() const {
  int n = 0;
  for (auto b : inside_) n += b;
  return n;
}

std::vector<HexCoord> RegionMask::cells() const {
  std::vector<HexCoord> out;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (inside_[static_cast<std::size_t>(r) * cols_ + c]) {
        out.push_back({2 * r + (c & 1), c});
      }
    }
  }
  return out;
}

std::vector<AbsDir> actions_from_states(const std::vector<HexCoord>& states) {
  std::vector<AbsDir> actions;
  actions.reserve(states.empty() ? 0 : states.size() - 1);
  for (std::size_t t = 0; t + 1 < states.size(); ++t) {
    const auto d = direction_between(states[t], states[t + 1]);
    if (!d) throw std::invalid_argument("actions_from_states: states not adjacent");
    actions.push_back(*d);
  }
  return actions;
}

bool trajectory_valid(const HexMap& map, const Trajectory& traj) {
  if (traj.states.empty()) return false;
  if (traj.actions.size() != traj.states.size() - 1) return false;
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    if (!map.passable(traj.states[t])) return false;
    if (t + 1 < traj.states.size() &&
        neighbor(traj.states[t], traj.actions[t]) != traj.states[t + 1]) {
      return false;
    }
  }
  return traj.states.back() == map.goal();
}

Trajectory wall_follow(const HexMap& map, Hand hand, long step_cap,
                       AbsDir initial_heading) {
  if (map.start() == map.goal()) {
    throw std::invalid_argument("wall_follow: start equals goal");
  }
  if (step_cap <= 0) step_cap = 20L * map.cell_count();
  const auto& scan = hand == Hand::Right ? kRightScan : kLeftScan;

  Trajectory traj;
  traj.states.push_back(map.start());
  HexCoord pos = map.start();
  AbsDir heading = initial_heading;
  for (long step = 0; pos != map.goal(); ++step) {
    if (step >= step_cap) {
      throw NavError("goal unreachable by wall-following");
    }
    bool moved = false;
    for (const RelAction rel : scan) {
      const AbsDir abs = relative_to_absolute(heading, rel);
      const HexCoord tgt = neighbor(pos, abs);
      if (!map.passable(tgt)) continue;
      traj.actions.push_back(abs);
      traj.states.push_back(tgt);
      pos = tgt;
      heading = abs;
      moved = true;
      break;
    }
    if (!moved) throw NavError("start enclosed");
  }
  return traj;
}

std::optional<std::vector<HexCoord>> k_step_path(const HexMap& map, HexCoord s,
                                                 HexCoord s2, int k) {
  if (k < 1 || step_distance(s, s2) != k) {
    throw std::invalid_argument("k_step_path: step distance must equal k");
  }
  std::vector<HexCoord> path{s};
  path.reserve(static_cast<std::size_t>(k) + 1);

  // Depth-first over distance-decreasing moves, actions tried in AbsDir
  // order, so the first complete path has the smallest action sequence.
  auto dfs = [&](auto&& self, HexCoord cur, int remaining) -> bool {
    if (remaining == 0) return cur == s2;
    for (int d = 0; d < kNumDirs; ++d) {
      const HexCoord nxt = neighbor(cur, static_cast<AbsDir>(d));
      if (step_distance(nxt, s2) != remaining - 1) continue;
      if (!map.passable(nxt)) continue;
      path.push_back(nxt);
      if (self(self, nxt, remaining - 1)) return true;
      path.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, s, k)) return std::nullopt;
  return path;
}

Trajectory reduce_trajectory(const HexMap& map, const Trajectory& traj, int k,
                             std::vector<SpliceRecord>* splices) {
  if (k < 1) throw std::invalid_argument("reduce_trajectory: K must be >= 1");
  std::vector<HexCoord> states = traj.states;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
      // Farthest later state on the k-ring of states[i] wins the splice.
      for (std::size_t j = states.size() - 1;
           j > i + static_cast<std::size_t>(k); --j) {
        if (step_distance(states[i], states[j]) != k) continue;
        const auto shortcut = k_step_path(map, states[i], states[j], k);
        if (!shortcut) continue;
        if (splices) splices->push_back({i, j, k});
        std::vector<HexCoord> next;
        next.reserve(states.size() - (j - i) + k);
        next.insert(next.end(), states.begin(),
                    states.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), shortcut->begin(), shortcut->end());
        next.insert(next.end(),
                    states.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                    states.end());
        states = std::move(next);
        changed = true;
        break;
      }
    }
  }

  Trajectory out;
  out.states = std::move(states);
  out.actions = actions_from_states(out.states);
  return out;
}

Trajectory reduce_up_to(const HexMap& map, const Trajectory& traj, int k,
                        std::vector<SpliceRecord>* splices) {
  Trajectory cur = traj;
  for (int step = 1; step <= k; ++step) {
    cur = reduce_trajectory(map, cur, step, splices);
  }
  return cur;
}

RegionMask closed_region(const HexMap& map, const Trajectory& left,
                         const Trajectory& right) {
  if (left.states.empty() || right.states.empty() ||
      left.states.front() != right.states.front() ||
      left.states.back() != right.states.back()) {
    throw std::invalid_argument("closed_region: trajectories must share endpoints");
  }
  const int rows = map.rows();
  const int cols = map.cols();

  RegionMask on_loop(rows, cols);
  for (const auto& c : left.states) on_loop.insert(c);
  for (const auto& c : right.states) on_loop.insert(c);

  // Flood the exterior over an offset window widened by one virtual ring.
  // All cells except loop cells are traversable here; obstacles cannot leak
  // the flood across the loop because loop cells are Free by construction.
  const int xr = rows + 2;
  const int xc = cols + 2;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(xr) * xc, 0);
  auto key = [&](HexCoord c) {
    const int par = ((c.j % 2) + 2) % 2;
    const int r = (c.i - par) / 2;
    return static_cast<std::size_t>(r + 1) * xc + (c.j + 1);
  };
  auto in_window = [&](HexCoord c) {
    if (((c.i % 2 + 2) % 2) != ((c.j % 2 + 2) % 2)) return false;
    return c.j >= -1 && c.j <= cols && c.i >= -2 && c.i <= 2 * rows + 1;
  };

  std::deque<HexCoord> frontier;
  auto try_seed = [&](HexCoord c) {
    if (!in_window(c) || seen[key(c)]) return;
    seen[key(c)] = 1;
    frontier.push_back(c);
  };
  for (int j = -1; j <= cols; ++j) {
    try_seed({-2 + ((j % 2 + 2) % 2), j});
    try_seed({2 * rows + ((j % 2 + 2) % 2), j});
  }
  for (int r = -1; r <= rows; ++r) {
    try_seed({2 * r + 1, -1});
    try_seed({2 * r + (cols & 1), cols});
  }

  while (!frontier.empty()) {
    const HexCoord cur = frontier.front();
    frontier.pop_front();
    for (int d = 0; d < kNumDirs; ++d) {
      const HexCoord nxt = neighbor(cur, static_cast<AbsDir>(d));
      if (!in_window(nxt) || seen[key(nxt)]) continue;
      if (on_loop.contains(nxt)) continue;
      seen[key(nxt)] = 1;
      frontier.push_back(nxt);
    }
  }

  RegionMask region(rows, cols);
  for (int idx = 0; idx < map.cell_count(); ++idx) {
    const HexCoord c = map.coord_of(idx);
    if (on_loop.contains(c)) {
      region.insert(c);
    } else if (map.kind(c) == CellKind::Free && !seen[key(c)]) {
      region.insert(c);
    }
  }
  return region;
}

std::pair<AbsDir, PledgeState> pledge_action(const HexMap& map, HexCoord pos,
                                             PledgeState st) {
  return pledge_action(map, nullptr, pos, st);
}

std::pair<AbsDir, PledgeState> pledge_action(const HexMap& map,
                                             const RegionMask* allowed,
                                             HexCoord pos, PledgeState st) {
  const bool theta0 = st.theta == 0;
  const bool ccw = st.chirality == Chirality::Counterclockwise;
  const auto& scan = ccw ? (theta0 ? kTheta0Ccw : kRightScan)
                         : (theta0 ? kTheta0Cw : kLeftScan);
  for (const RelAction rel : scan) {
    const AbsDir abs = relative_to_absolute(st.heading, rel);
    const HexCoord tgt = neighbor(pos, abs);
    if (!passable_in(map, allowed, tgt)) continue;
    int delta = (static_cast<int>(abs) - static_cast<int>(st.heading) + 6) % 6;
    if (!ccw) delta = (6 - delta) % 6;  // mirrored winding
    st.theta += signed_turn(delta, theta0);
    st.heading = abs;
    return {abs, st};
  }
  throw NavError("enclosed");
}

}  // namespace hexnav
