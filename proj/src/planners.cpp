#include "hexnav/planners.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "hexnav/rng.hpp"

namespace hexnav {

namespace {

Path reconstruct(const HexMap& map, const std::vector<int>& parent, int goal_idx) {
  std::vector<HexCoord> states;
  for (int cur = goal_idx; cur != -1; cur = parent[cur]) {
    states.push_back(map.coord_of(cur));
  }
  std::reverse(states.begin(), states.end());
  return Path{std::move(states)};
}

}  // namespace

std::optional<Path> bfs_shortest(const HexMap& map, const RegionMask* region,
                                 SearchStats* stats) {
  const int start = map.index_of(map.start());
  const int goal = map.index_of(map.goal());
  std::vector<int> parent(static_cast<std::size_t>(map.cell_count()), -2);
  std::deque<int> frontier;
  parent[start] = -1;
  frontier.push_back(start);
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop_front();
    if (stats) ++stats->expanded;
    if (cur == goal) return reconstruct(map, parent, goal);
    const HexCoord c = map.coord_of(cur);
    for (int d = 0; d < kNumDirs; ++d) {
      const HexCoord nxt = neighbor(c, static_cast<AbsDir>(d));
      if (!map.passable(nxt)) continue;
      if (region && !region->contains(nxt)) continue;
      const int nidx = map.index_of(nxt);
      if (parent[nidx] != -2) continue;
      parent[nidx] = cur;
      frontier.push_back(nidx);
    }
  }
  return std::nullopt;
}

std::optional<Path> astar(const HexMap& map, double edge_cm, SearchStats* stats) {
  if (edge_cm <= 0) throw std::invalid_argument("astar: edge_cm must be positive");
  const int start = map.index_of(map.start());
  const int goal = map.index_of(map.goal());
  const auto [gx, gy] = cell_center(map.goal(), edge_cm);
  const double hop = std::sqrt(3.0) * edge_cm;
  auto heuristic = [&](int idx) {
    const auto [x, y] = cell_center(map.coord_of(idx), edge_cm);
    return std::hypot(x - gx, y - gy) / hop;
  };

  struct Node {
    double f;
    std::uint64_t seq;  // FIFO among equal f, for determinism
    int idx;
    bool operator>(const Node& o) const {
      return f != o.f ? f > o.f : seq > o.seq;
    }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
  std::vector<double> g(static_cast<std::size_t>(map.cell_count()),
                        std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<std::size_t>(map.cell_count()), -2);
  std::vector<std::uint8_t> closed(static_cast<std::size_t>(map.cell_count()), 0);

  std::uint64_t seq = 0;
  g[start] = 0.0;
  parent[start] = -1;
  open.push({heuristic(start), seq++, start});
  while (!open.empty()) {
    const Node top = open.top();
    open.pop();
    if (closed[top.idx]) continue;
    closed[top.idx] = 1;
    if (stats) ++stats->expanded;
    if (top.idx == goal) return reconstruct(map, parent, goal);
    const HexCoord c = map.coord_of(top.idx);
    for (int d = 0; d < kNumDirs; ++d) {
      const HexCoord nxt = neighbor(c, static_cast<AbsDir>(d));
      if (!map.passable(nxt)) continue;
      const int nidx = map.index_of(nxt);
      if (closed[nidx]) continue;
      const double ng = g[top.idx] + 1.0;
      if (ng < g[nidx]) {
        g[nidx] = ng;
        parent[nidx] = top.idx;
        open.push({ng + heuristic(nidx), seq++, nidx});
      }
    }
  }
  return std::nullopt;
}

Path aco(const HexMap& map, const AcoParams& params) {
  if (params.n_ants < 1 || params.iterations < 1 ||
      params.evaporation <= 0 || params.evaporation >= 1) {
    throw std::invalid_argument("aco: bad parameters");
  }
  const int cells = map.cell_count();
  const int goal = map.index_of(map.goal());
  std::vector<double> pheromone(static_cast<std::size_t>(cells) * kNumDirs, 1.0);
  Rng rng(params.seed);

  std::optional<std::vector<int>> best;  // cell indices
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(cells), 0);
  std::vector<int> walk;
  std::array<double, 6> weights{};
  std::array<int, 6> targets{};

  for (int iter = 0; iter < params.iterations; ++iter) {
    for (int ant = 0; ant < params.n_ants; ++ant) {
      std::fill(visited.begin(), visited.end(), 0);
      walk.clear();
      int cur = map.index_of(map.start());
      visited[cur] = 1;
      walk.push_back(cur);
      bool complete = false;
      while (true) {
        const HexCoord c = map.coord_of(cur);
        int n_cand = 0;
        int goal_dir = -1;
        for (int d = 0; d < kNumDirs; ++d) {
          const HexCoord nxt = neighbor(c, static_cast<AbsDir>(d));
          if (!map.passable(nxt)) continue;
          const int nidx = map.index_of(nxt);
          if (visited[nidx]) continue;
          if (nidx == goal) {
            goal_dir = d;
            break;
          }
          const double tau = pheromone[static_cast<std::size_t>(cur) * kNumDirs + d];
          const double eta = 1.0 / step_distance(nxt, map.goal());
          weights[n_cand] = std::pow(tau, params.pheromone_weight) *
                            std::pow(eta, params.heuristic_weight);
          targets[n_cand] = nidx;
          ++n_cand;
        }
        if (goal_dir >= 0) {
          walk.push_back(goal);
          complete = true;
          break;
        }
        if (n_cand == 0) break;  // dead end, discard ant
        const int pick = rng.weighted({weights.data(), static_cast<std::size_t>(n_cand)});
        cur = targets[pick];
        visited[cur] = 1;
        walk.push_back(cur);
      }
      if (complete && (!best || walk.size() < best->size())) {
        best = walk;
      }
    }

    for (double& tau : pheromone) tau *= 1.0 - params.evaporation;
    if (best) {
      const double gain = params.deposit / static_cast<double>(best->size() - 1);
      for (std::size_t t = 0; t + 1 < best->size(); ++t) {
        const auto dir = direction_between(map.coord_of((*best)[t]),
                                           map.coord_of((*best)[t + 1]));
        pheromone[static_cast<std::size_t>((*best)[t]) * kNumDirs +
                  static_cast<int>(*dir)] += gain;
      }
    }
  }

  if (!best) throw NavError("no path constructed");
  Path path;
  path.states.reserve(best->size());
  for (int idx : *best) path.states.push_back(map.coord_of(idx));
  return path;
}

}  // namespace hexnav
