#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexnav/experiment.hpp"
#include "hexnav/mapgen.hpp"

namespace {

using namespace hexnav;
using nlohmann::json;

json trajectory_json(const Trajectory& traj) {
  json states = json::array();
  for (const auto& c : traj.states) states.push_back({c.i, c.j});
  json actions = json::array();
  for (const auto a : traj.actions) actions.push_back(static_cast<int>(a));
  return {{"states", std::move(states)}, {"actions", std::move(actions)}};
}

json path_json(const Path& path) {
  json states = json::array();
  for (const auto& c : path.states) states.push_back({c.i, c.j});
  const auto m = path_metrics(path);
  return {{"states", std::move(states)},
          {"length", m.length},
          {"direction_switches", m.direction_switches}};
}

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw NavError("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexnav: hex-grid navigation lab (wall rules, space reduction, tabular RL)"};
  app.require_subcommand(1);

  // rasterize
  double length_cm = 0, width_cm = 0, edge = 0;
  auto* rast = app.add_subcommand("rasterize", "Grid dimensions for a physical map");
  rast->add_option("--length", length_cm, "first extent in cm (drives rows)")->required();
  rast->add_option("--width", width_cm, "second extent in cm (drives columns)")->required();
  rast->add_option("--edge", edge, "hex edge length in cm")->required();

  // trace-wall
  std::string map_path, hand_name = "right", out_file;
  auto* trace = app.add_subcommand("trace-wall", "Wall-following trajectory");
  trace->add_option("--map", map_path, "map file")->required();
  trace->add_option("--hand", hand_name, "left|right")
      ->check(CLI::IsMember({"left", "right"}));
  trace->add_option("--out", out_file, "output file (default stdout)");

  // reduce
  int k = 3;
  auto* red = app.add_subcommand("reduce", "Reduced wall trajectories (step sizes 1..K)");
  red->add_option("--map", map_path, "map file")->required();
  red->add_option("--k", k, "optimization step")->check(CLI::PositiveNumber);
  red->add_option("--hand", hand_name, "left|right")
      ->check(CLI::IsMember({"left", "right"}));
  red->add_option("--out", out_file, "output file (default stdout)");

  // region
  auto* reg = app.add_subcommand("region", "Closed-region overlay of both reduced trajectories");
  reg->add_option("--map", map_path, "map file")->required();
  reg->add_option("--k", k, "optimization step")->check(CLI::PositiveNumber);
  reg->add_option("--out", out_file, "output file (default stdout)");

  // plan
  std::string algo = "astar";
  std::uint64_t seed = 0;
  double edge_override = 0;
  auto* plan = app.add_subcommand("plan", "Classical planner");
  plan->add_option("--map", map_path, "map file")->required();
  plan->add_option("--algo", algo, "astar|aco|bfs")
      ->check(CLI::IsMember({"astar", "aco", "bfs"}));
  plan->add_option("--seed", seed, "rng seed (aco)");
  plan->add_option("--edge", edge_override, "hex edge in cm (astar heuristic)");
  plan->add_option("--out", out_file, "output file (default stdout)");

  // train / bench
  std::string config_path;
  auto* tr = app.add_subcommand("train", "Run one experiment from a config file");
  tr->add_option("--config", config_path, "config file")->required();
  auto* be = app.add_subcommand("bench", "Run paired methods from a config file");
  be->add_option("--config", config_path, "config file")->required();

  // check-theorems
  auto* chk = app.add_subcommand("check-theorems", "Reduction guarantees on one map");
  chk->add_option("--map", map_path, "map file")->required();
  chk->add_option("--k", k, "optimization step")->check(CLI::PositiveNumber);

  // gen-map
  std::string preset = "room-35x19-obstacles";
  auto* gen = app.add_subcommand("gen-map", "Write a bundled synthetic map");
  gen->add_option("--preset", preset, "preset name")
      ->check(CLI::IsMember(preset_names()));
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rast->parsed()) {
      const auto [rows, cols] = rasterize_dims(length_cm, width_cm, edge);
      std::cout << rows << ' ' << cols << '\n';
    } else if (trace->parsed()) {
      const HexMap map = load_map_file(map_path);
      const Hand hand = hand_name == "left" ? Hand::Left : Hand::Right;
      write_or_print(out_file, trajectory_json(wall_follow(map, hand)).dump() + "\n");
    } else if (red->parsed()) {
      const HexMap map = load_map_file(map_path);
      const Hand hand = hand_name == "left" ? Hand::Left : Hand::Right;
      const Trajectory traj = wall_follow(map, hand);
      write_or_print(out_file,
                     trajectory_json(reduce_up_to(map, traj, k)).dump() + "\n");
    } else if (reg->parsed()) {
      const HexMap map = load_map_file(map_path);
      const Trajectory left = reduce_up_to(map, wall_follow(map, Hand::Left), k);
      const Trajectory right = reduce_up_to(map, wall_follow(map, Hand::Right), k);
      write_or_print(out_file, region_overlay(map, closed_region(map, left, right)));
    } else if (plan->parsed()) {
      const HexMap map = load_map_file(map_path);
      std::optional<Path> path;
      if (algo == "bfs") {
        path = bfs_shortest(map);
      } else if (algo == "astar") {
        double e = edge_override;
        if (e <= 0 && map.edge_cm()) e = *map.edge_cm();
        if (e <= 0) throw NavError("astar needs --edge or an edge_cm map header");
        path = astar(map, e);
      } else {
        AcoParams params;
        params.seed = seed;
        path = aco(map, params);
      }
      if (!path) throw NavError("no path: goal unreachable");
      write_or_print(out_file, path_json(*path).dump() + "\n");
    } else if (tr->parsed()) {
      const ExperimentConfig cfg = parse_config_file(config_path);
      const ExperimentReport rep = run_experiment(cfg);
      std::cout << "method " << rep.method << ": mean total steps "
                << rep.mean_total_steps << " over " << cfg.runs << " run(s)\n";
    } else if (be->parsed()) {
      const ExperimentConfig cfg = parse_config_file(config_path);
      const BenchReport rep = run_bench(cfg);
      for (const auto& r : rep.reports) {
        std::cout << r.method << ": mean total steps " << r.mean_total_steps;
        const auto it = rep.reduction_vs_plain_pct.find(r.method);
        if (it != rep.reduction_vs_plain_pct.end()) {
          std::cout << " (reduction vs rl_plain: " << it->second << "%)";
        }
        std::cout << '\n';
      }
    } else if (chk->parsed()) {
      const HexMap map = load_map_file(map_path);
      const TheoremReport rep = check_theorems(map, k);
      std::cout << "wall trajectories: left " << rep.left_len << " -> "
                << rep.left_reduced << ", right " << rep.right_len << " -> "
                << rep.right_reduced << " (splices: " << rep.splice_count
                << ")\n";
      std::cout << "shortest path: full " << rep.bfs_full << ", in region "
                << rep.bfs_region << "; region size " << rep.region_size << '\n';
      std::cout << "splice shrink check: " << (rep.theorem1_ok ? "PASS" : "FAIL")
                << '\n';
      std::cout << "optimal-path preservation: "
                << (rep.theorem2_ok ? "PASS" : "FAIL") << '\n';
      if (!rep.theorem1_ok || !rep.theorem2_ok) {
        std::cerr << rep.failure_dump;
        return 1;
      }
    } else if (gen->parsed()) {
      write_or_print(out_file, render_ascii(generate_preset(preset, seed)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
