#include "hexnav/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hexnav/mapgen.hpp"

namespace hexnav {

namespace fs = std::filesystem;
using nlohmann::json;

int direction_switches(const Path& path) {
  const auto actions = actions_from_states(path.states);
  int switches = 0;
  for (std::size_t t = 1; t < actions.size(); ++t) {
    if (actions[t] != actions[t - 1]) ++switches;
  }
  return switches;
}

PathMetrics path_metrics(const Path& path) {
  return {path.length(), direction_switches(path)};
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected 'key = value'");
      }
      values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }

  std::string str(const std::string& key, std::string def) {
    used_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? def : it->second;
  }
  double num(const std::string& key, double def) {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) {
      throw std::invalid_argument("config key '" + key + "': bad number");
    }
    return v;
  }
  long integer(const std::string& key, long def) {
    const double v = num(key, static_cast<double>(def));
    const long n = std::lround(v);
    if (static_cast<double>(n) != v) {
      throw std::invalid_argument("config key '" + key + "': expected integer");
    }
    return n;
  }

  void check_all_used() const {
    for (const auto& [k, v] : values_) {
      if (!used_.count(k)) {
        throw std::invalid_argument("unknown config key: " + k);
      }
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

Schedule parse_schedule(KeyValues& kv, const std::string& prefix,
                        const Schedule& def) {
  const std::string kind = kv.str(prefix + ".kind", "");
  Schedule s = def;
  const long cutoff = kv.integer(prefix + ".cutoff", def.cutoff);
  const double after = kv.num(prefix + ".after", def.after);
  if (kind == "exp") {
    s = Schedule::exp_decay(kv.num(prefix + ".rate", 0.001), cutoff, after);
  } else if (kind == "rational") {
    s = Schedule::rational(kv.num(prefix + ".scale", 1.0),
                           kv.num(prefix + ".rate", 0.0),
                           kv.num(prefix + ".offset", 1.0), cutoff, after);
  } else if (kind == "const") {
    s = Schedule::constant_of(kv.num(prefix + ".value", 0.1));
  } else if (kind.empty()) {
    // keep default, but still accept overrides of its fields
    s.rate = kv.num(prefix + ".rate", def.rate);
    s.scale = kv.num(prefix + ".scale", def.scale);
    s.offset = kv.num(prefix + ".offset", def.offset);
    s.cutoff = cutoff;
    s.after = after;
    s.constant = kv.num(prefix + ".value", def.constant);
  } else {
    throw std::invalid_argument("config: unknown schedule kind '" + kind + "'");
  }
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  KeyValues kv(text);
  ExperimentConfig cfg;
  cfg.map_path = kv.str("map", "");
  cfg.method = kv.str("method", cfg.method);
  cfg.runs = static_cast<int>(kv.integer("runs", cfg.runs));
  cfg.seed = static_cast<std::uint64_t>(kv.integer("seed", 0));
  cfg.out_dir = kv.str("out", cfg.out_dir);
  cfg.workers = static_cast<int>(kv.integer("workers", cfg.workers));

  RurlConfig& r = cfg.rurl;
  r.k = static_cast<int>(kv.integer("rurl.k", r.k));
  r.pledge_episodes = kv.integer("rurl.n", r.pledge_episodes);
  r.max_steps = kv.integer("rurl.m_max", r.max_steps);
  r.max_episodes = kv.integer("rurl.t_max", r.max_episodes);
  r.omega = kv.num("rurl.omega", r.omega);
  r.b = kv.num("rurl.b", r.b);
  r.alpha = kv.num("rurl.alpha", r.alpha);
  r.gamma = kv.num("rurl.gamma", r.gamma);
  const std::string algo = kv.str("rurl.algo", "qlearning");
  if (algo == "qlearning") {
    r.algo = Algo::QLearning;
  } else if (algo == "sarsa") {
    r.algo = Algo::Sarsa;
  } else {
    throw std::invalid_argument("config: unknown algo '" + algo + "'");
  }
  const std::string strat = kv.str("rurl.strategy", "epsilon_greedy");
  if (strat == "epsilon_greedy") {
    r.strategy.kind = ExplorationStrategy::Kind::EpsilonGreedy;
  } else if (strat == "softmax") {
    r.strategy.kind = ExplorationStrategy::Kind::Softmax;
  } else {
    throw std::invalid_argument("config: unknown strategy '" + strat + "'");
  }
  // Defaults follow the single-room protocol: epsilon = exp(-0.001*episode)
  // until episode 3500, zero afterwards.
  r.strategy.schedule = parse_schedule(
      kv, "rurl.explore", Schedule::exp_decay(0.001, 3500, 0.0));
  r.strategy.beta = kv.num("rurl.count.beta", 0.4);
  r.strategy.damping = kv.num("rurl.ucb.d", 0.9);
  r.strategy.tendency = kv.num("rurl.ucb.c", 0.01);

  AcoParams& a = cfg.aco;
  a.n_ants = static_cast<int>(kv.integer("aco.ants", a.n_ants));
  a.iterations = static_cast<int>(kv.integer("aco.iterations", a.iterations));
  a.pheromone_weight = kv.num("aco.alpha", a.pheromone_weight);
  a.heuristic_weight = kv.num("aco.beta", a.heuristic_weight);
  a.evaporation = kv.num("aco.rho", a.evaporation);
  a.deposit = kv.num("aco.q", a.deposit);

  cfg.astar_edge_cm = kv.num("astar.edge_cm", 0.0);

  const std::string methods = kv.str("bench.methods", "rurl,rl_plain");
  cfg.bench_methods.clear();
  std::istringstream ms(methods);
  std::string item;
  while (std::getline(ms, item, ',')) {
    item = trim(item);
    if (!item.empty()) cfg.bench_methods.push_back(item);
  }

  kv.check_all_used();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NavError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

struct MethodFlags {
  bool is_rl = false;
  bool rules = false;
  bool pledge = false;
  std::optional<ExplorationStrategy::Kind> override_kind;
};

MethodFlags method_flags(const std::string& method) {
  if (method == "rurl") return {true, true, true, std::nullopt};
  if (method == "rl_plain") return {true, false, false, std::nullopt};
  if (method == "rl_count") {
    return {true, false, false, ExplorationStrategy::Kind::CountBased};
  }
  if (method == "rl_ucb") {
    return {true, false, false, ExplorationStrategy::Kind::Ucb};
  }
  if (method == "astar" || method == "aco" || method == "bfs") return {};
  throw std::invalid_argument("unknown method: " + method);
}

std::string out_dir_for(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("HEXNAV_OUT")) {
    if (*env) return env;
  }
  return cfg.out_dir;
}

json path_json(const Path& path, bool converged) {
  json states = json::array();
  for (const auto& c : path.states) states.push_back({c.i, c.j});
  const auto m = path_metrics(path);
  return {{"length", m.length},
          {"direction_switches", m.direction_switches},
          {"converged", converged},
          {"states", states}};
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw NavError("cannot write " + file.string());
  out << text;
}

}  // namespace

namespace {

ExperimentReport run_experiment_in(const ExperimentConfig& config,
                                   const fs::path& out_dir) {
  if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
  const HexMap map = load_map_file(config.map_path);
  if (!bfs_shortest(map)) throw NavError("map is unsolvable");

  fs::create_directories(out_dir);

  ExperimentReport report;
  report.method = config.method;
  const MethodFlags flags = method_flags(config.method);

  json summary;
  summary["method"] = config.method;
  summary["map"] = config.map_path;
  summary["runs"] = config.runs;
  summary["seed"] = config.seed;

  if (!flags.is_rl) {
    json paths = json::array();
    for (int run = 0; run < config.runs; ++run) {
      Path path = [&] {
        if (config.method == "bfs") return *bfs_shortest(map);
        if (config.method == "astar") {
          double edge = config.astar_edge_cm;
          if (edge <= 0 && map.edge_cm()) edge = *map.edge_cm();
          if (edge <= 0) {
            throw NavError("astar needs astar.edge_cm or an edge_cm map header");
          }
          return *astar(map, edge);
        }
        AcoParams params = config.aco;
        params.seed = derive_seed(config.seed, static_cast<std::uint64_t>(run));
        return aco(map, params);
      }();
      report.final_metrics.push_back(path_metrics(path));
      report.converged_per_run.push_back(1);
      report.total_steps_per_run.push_back(0);
      paths.push_back(path_json(path, true));
    }
    summary["paths"] = std::move(paths);
    write_text(out_dir / "summary.json", summary.dump(2) + "\n");
    return report;
  }

  // RL branch: independent seeded runs, optionally in a small worker pool.
  const int runs = config.runs;
  int width = config.workers > 0
                  ? config.workers
                  : static_cast<int>(std::thread::hardware_concurrency());
  width = std::max(1, std::min(width, runs));

  std::vector<std::optional<TrainResult>> results(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<int> cursor{0};
  auto work = [&] {
    for (int run; (run = cursor.fetch_add(1)) < runs;) {
      try {
        RurlConfig rc = config.rurl;
        rc.seed = derive_seed(config.seed, static_cast<std::uint64_t>(run));
        if (flags.override_kind) rc.strategy.kind = *flags.override_kind;
        const bool pledge = flags.pledge && rc.pledge_episodes > 0;
        results[run] = train(rc, map, flags.rules, pledge);
      } catch (...) {
        errors[run] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < width; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (int run = 0; run < runs; ++run) {
    if (errors[run]) {
      try {
        std::rethrow_exception(errors[run]);
      } catch (const std::exception& e) {
        throw NavError("run " + std::to_string(run) + " (seed " +
                       std::to_string(derive_seed(config.seed, run)) +
                       ") failed: " + e.what());
      }
    }
  }

  const long episodes = config.rurl.max_episodes;
  report.mean_curve.assign(static_cast<std::size_t>(episodes), 0.0);
  json final_paths = json::array();
  for (int run = 0; run < runs; ++run) {
    const TrainResult& tr = *results[run];
    report.total_steps_per_run.push_back(tr.total_steps);
    for (long ep = 0; ep < episodes; ++ep) {
      report.mean_curve[ep] += static_cast<double>(tr.steps_per_episode[ep]);
    }
    Path final_path{tr.final_greedy_path.states};
    report.final_metrics.push_back(path_metrics(final_path));
    report.converged_per_run.push_back(tr.greedy_converged ? 1 : 0);
    final_paths.push_back(path_json(final_path, tr.greedy_converged));

    std::ostringstream csv;
    csv << "episode,steps,pledge_used\n";
    for (long ep = 0; ep < episodes; ++ep) {
      csv << (ep + 1) << ',' << tr.steps_per_episode[ep] << ','
          << static_cast<int>(tr.pledge_used[ep]) << '\n';
    }
    std::ostringstream name;
    name << "run_" << std::setw(3) << std::setfill('0') << run << ".csv";
    write_text(out_dir / name.str(), csv.str());
  }
  for (double& v : report.mean_curve) v /= runs;
  for (long long t : report.total_steps_per_run) {
    report.mean_total_steps += static_cast<double>(t);
  }
  report.mean_total_steps /= runs;

  summary["total_steps_per_run"] = report.total_steps_per_run;
  summary["mean_total_steps"] = report.mean_total_steps;
  summary["episodes"] = episodes;
  summary["final_paths"] = std::move(final_paths);
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  write_text(out_dir / "curves.svg", emit_svg({{config.method, report.mean_curve}}));
  return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment_in(config, out_dir_for(config));
}

BenchReport run_bench(const ExperimentConfig& config) {
  const fs::path out_root = out_dir_for(config);
  fs::create_directories(out_root);

  BenchReport bench;
  std::vector<std::pair<std::string, std::vector<double>>> curves;
  for (const std::string& method : config.bench_methods) {
    ExperimentConfig sub = config;
    sub.method = method;
    ExperimentReport rep = run_experiment_in(sub, out_root / method);
    if (!rep.mean_curve.empty()) curves.push_back({method, rep.mean_curve});
    bench.reports.push_back(std::move(rep));
  }

  const ExperimentReport* plain = nullptr;
  for (const auto& r : bench.reports) {
    if (r.method == "rl_plain") plain = &r;
  }
  json summary;
  summary["map"] = config.map_path;
  summary["runs"] = config.runs;
  summary["seed"] = config.seed;
  json methods = json::array();
  for (const auto& r : bench.reports) {
    json m;
    m["method"] = r.method;
    m["mean_total_steps"] = r.mean_total_steps;
    m["total_steps_per_run"] = r.total_steps_per_run;
    if (plain && plain != &r && plain->mean_total_steps > 0 &&
        !r.total_steps_per_run.empty() && r.total_steps_per_run.front() >= 0 &&
        r.mean_total_steps > 0) {
      const double pct =
          (plain->mean_total_steps - r.mean_total_steps) /
          plain->mean_total_steps * 100.0;
      bench.reduction_vs_plain_pct[r.method] = pct;
      m["reduction_vs_plain_pct"] = pct;
    }
    methods.push_back(std::move(m));
  }
  summary["methods"] = std::move(methods);
  write_text(out_root / "bench_summary.json", summary.dump(2) + "\n");
  if (!curves.empty()) {
    write_text(out_root / "curves.svg", emit_svg(curves));
  }
  return bench;
}

TheoremReport check_theorems(const HexMap& map, int k) {
  TheoremReport rep;
  const auto full = bfs_shortest(map);
  if (!full) throw NavError("map is unsolvable");

  const Trajectory left = wall_follow(map, Hand::Left);
  const Trajectory right = wall_follow(map, Hand::Right);
  std::vector<SpliceRecord> splices;
  const Trajectory left_red = reduce_up_to(map, left, k, &splices);
  const Trajectory right_red = reduce_up_to(map, right, k, &splices);

  rep.left_len = left.length();
  rep.left_reduced = left_red.length();
  rep.right_len = right.length();
  rep.right_reduced = right_red.length();
  rep.splice_count = splices.size();
  rep.theorem1_ok = true;
  for (const auto& s : splices) {
    if (s.j - s.i <= static_cast<std::size_t>(s.k)) rep.theorem1_ok = false;
  }

  const RegionMask region = closed_region(map, left_red, right_red);
  rep.region_size = region.size();
  rep.bfs_full = full->length();
  const auto restricted = bfs_shortest(map, &region);
  rep.bfs_region = restricted ? restricted->length() : -1;
  rep.theorem2_ok = restricted && restricted->length() == full->length();

  if (!rep.theorem1_ok || !rep.theorem2_ok) {
    std::ostringstream dump;
    dump << "theorem check failed (K=" << k << ", full=" << rep.bfs_full
         << ", region=" << rep.bfs_region << ")\n";
    dump << region_overlay(map, region);
    dump << "left reduced:";
    for (const auto& c : left_red.states) dump << " (" << c.i << ',' << c.j << ')';
    dump << "\nright reduced:";
    for (const auto& c : right_red.states) dump << " (" << c.i << ',' << c.j << ')';
    dump << '\n';
    rep.failure_dump = dump.str();
  }
  return rep;
}

std::string region_overlay(const HexMap& map, const RegionMask& region) {
  std::string base = render_ascii(map);
  std::string out;
  out.reserve(base.size());
  // Headers pass through untouched; grid characters are replaced.
  std::istringstream in(base);
  std::string line;
  int r = 0;
  while (std::getline(in, line)) {
    if (line.starts_with("# ")) {
      out += line + "\n";
      continue;
    }
    for (int c = 0; c < static_cast<int>(line.size()); ++c) {
      const HexCoord coord{2 * r + (c & 1), c};
      out += region.contains(coord) ? '*' : line[c];
    }
    out += '\n';
    ++r;
  }
  return out;
}

std::string emit_svg(
    const std::vector<std::pair<std::string, std::vector<double>>>& curves) {
  if (curves.empty()) throw std::invalid_argument("emit_svg: no curves");
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  const double width = 840, height = 520;
  const double left = 70, right = 180, top = 20, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;

  std::size_t n = 0;
  double ymax = 0;
  for (const auto& [name, ys] : curves) {
    if (ys.empty()) throw std::invalid_argument("emit_svg: empty curve");
    n = std::max(n, ys.size());
    for (double y : ys) ymax = std::max(ymax, y);
  }
  if (ymax <= 0) ymax = 1;
  ymax *= 1.05;

  auto px = [&](double ep) {
    return left + (n > 1 ? ep / static_cast<double>(n - 1) : 0.5) * pw;
  };
  auto py = [&](double y) { return top + ph - y / ymax * ph; };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\""
      << left + pw << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double yv = ymax / 1.05 * tick / 4.0;
    const double xv = (n > 1 ? (n - 1) * tick / 4.0 : 0) + 1;
    svg << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"12\">"
        << static_cast<long long>(std::llround(yv)) << "</text>\n";
    svg << "<text x=\"" << px(xv - 1) << "\" y=\"" << top + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"12\">"
        << static_cast<long long>(std::llround(xv)) << "</text>\n";
  }
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">episode</text>\n";
  svg << "<text x=\"18\" y=\"" << top + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << top + ph / 2 << ")\">mean steps per episode</text>\n";

  // Long curves are decimated; the drawn polyline keeps the first and last
  // points.
  int color = 0;
  for (const auto& [name, ys] : curves) {
    const std::size_t step = std::max<std::size_t>(1, ys.size() / 2000);
    svg << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 6]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < ys.size(); t += step) {
      svg << px(static_cast<double>(t)) << ',' << py(ys[t]) << ' ';
    }
    if ((ys.size() - 1) % step != 0) {
      svg << px(static_cast<double>(ys.size() - 1)) << ',' << py(ys.back());
    }
    svg << "\"/>\n";
    const double ly = top + 16 + 18 * color;
    svg << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << left + pw + 36 << "\" y2=\"" << ly << "\" stroke=\""
        << kPalette[color % 6] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << name << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hexnav
