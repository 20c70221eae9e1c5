#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hexnav/learn.hpp"
#include "hexnav/planners.hpp"

namespace hexnav {

struct PathMetrics {
  int length = 0;
  int direction_switches = 0;
};

// Number of consecutive action pairs along the path that differ.
int direction_switches(const Path& path);

PathMetrics path_metrics(const Path& path);

struct ExperimentConfig {
  std::string map_path;
  std::string method = "rurl";  // rurl | rl_plain | rl_count | rl_ucb | astar | aco | bfs
  RurlConfig rurl;
  AcoParams aco;
  double astar_edge_cm = 0;  // 0: take the map's edge_cm header
  int runs = 50;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  int workers = 0;  // 0: one per available core, capped by runs
  std::vector<std::string> bench_methods{"rurl", "rl_plain"};
};

// Flat "key = value" config text with '#' comments and dotted keys.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct ExperimentReport {
  std::string method;
  std::vector<double> mean_curve;  // mean steps per episode; empty for planners
  std::vector<long long> total_steps_per_run;
  double mean_total_steps = 0;
  std::vector<PathMetrics> final_metrics;
  std::vector<std::uint8_t> converged_per_run;
};

// Runs `runs` seeded runs of the configured method (seeds derived from the
// root seed by run index), merges them deterministically, and writes per-run
// CSVs, summary.json and a learning-curve SVG under the output directory.
// The HEXNAV_OUT environment variable overrides the output directory.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct BenchReport {
  std::vector<ExperimentReport> reports;
  // Percent reduction of each method's mean total steps vs rl_plain.
  std::map<std::string, double> reduction_vs_plain_pct;
};

// Paired comparison: every method runs with identical per-run seeds.
BenchReport run_bench(const ExperimentConfig& config);

struct TheoremReport {
  bool theorem1_ok = false;  // every splice strictly shortened its segment
  bool theorem2_ok = false;  // optimal length preserved inside the region
  int bfs_full = 0;
  int bfs_region = 0;
  std::size_t splice_count = 0;
  std::size_t left_len = 0, left_reduced = 0;
  std::size_t right_len = 0, right_reduced = 0;
  int region_size = 0;
  std::string failure_dump;  // map/trajectory/region overlay when failing
};

// Empirical check of the reduction guarantees on one map: both wall
// trajectories are reduced with step sizes 1..K, the closed region is
// extracted, and the shortest path inside the region is compared with the
// map-wide one.
TheoremReport check_theorems(const HexMap& map, int k);

// Standalone SVG line plot: one polyline per named curve, x = episode,
// y = value, linear axes, legend.
std::string emit_svg(
    const std::vector<std::pair<std::string, std::vector<double>>>& curves);

// Region rendered over the map: '*' for cells in the mask, the map character
// otherwise.
std::string region_overlay(const HexMap& map, const RegionMask& region);

}  // namespace hexnav
