#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hexnav/map.hpp"
#include "hexnav/rules.hpp"

namespace hexnav {

// A start-to-goal walk over Free cells, endpoints included.
struct Path {
  std::vector<HexCoord> states;

  int length() const { return static_cast<int>(states.size()) - 1; }
};

struct AcoParams {
  int n_ants = 100;
  int iterations = 200;
  double pheromone_weight = 1.0;   // alpha
  double heuristic_weight = 2.0;   // beta
  double evaporation = 0.5;        // rho
  double deposit = 100.0;          // Q
  std::uint64_t seed = 0;
};

struct SearchStats {
  std::size_t expanded = 0;
};

// Minimum-hop path via breadth-first search, expansion in AbsDir order;
// restricted to `region` when given. nullopt when the goal is unreachable.
std::optional<Path> bfs_shortest(const HexMap& map,
                                 const RegionMask* region = nullptr,
                                 SearchStats* stats = nullptr);

// Minimum-hop path via A* with unit edge costs and the straight-line
// distance between cell centers, scaled by the sqrt(3)*a hop length, as the
// (admissible) heuristic.
std::optional<Path> astar(const HexMap& map, double edge_cm,
                          SearchStats* stats = nullptr);

// Ant-colony search: ants sample moves proportionally to
// pheromone^alpha * (1/step_distance_to_goal)^beta over unvisited free
// neighbors, dead ends are discarded, and after each iteration's
// evaporation the global best path is reinforced with deposit/length.
// Throws NavError when no ant completes within the iteration budget.
Path aco(const HexMap& map, const AcoParams& params);

}  // namespace hexnav
