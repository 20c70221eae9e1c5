#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hexnav/experiment.hpp"
#include "hexnav/mapgen.hpp"

namespace py = pybind11;

namespace {

using namespace hexnav;
using IJ = std::pair<int, int>;

HexCoord coord(IJ p) { return {p.first, p.second}; }
IJ pair_of(HexCoord c) { return {c.i, c.j}; }

std::vector<IJ> pairs_of(const std::vector<HexCoord>& cells) {
  std::vector<IJ> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(pair_of(c));
  return out;
}

Hand parse_hand(const std::string& name) {
  if (name == "left") return Hand::Left;
  if (name == "right") return Hand::Right;
  throw std::invalid_argument("hand must be 'left' or 'right'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hex-grid navigation lab: wall rules, space reduction, tabular RL";

  py::register_exception<MapParseError>(m, "MapParseError", PyExc_ValueError);
  py::register_exception<NavError>(m, "NavError", PyExc_RuntimeError);

  py::enum_<Algo>(m, "Algo")
      .value("Q_LEARNING", Algo::QLearning)
      .value("SARSA", Algo::Sarsa);

  py::enum_<ExplorationStrategy::Kind>(m, "StrategyKind")
      .value("EPSILON_GREEDY", ExplorationStrategy::Kind::EpsilonGreedy)
      .value("SOFTMAX", ExplorationStrategy::Kind::Softmax)
      .value("COUNT_BASED", ExplorationStrategy::Kind::CountBased)
      .value("UCB", ExplorationStrategy::Kind::Ucb);

  py::class_<Schedule>(m, "Schedule")
      .def_static("exp_decay", &Schedule::exp_decay, py::arg("rate"),
                  py::arg("cutoff") = -1, py::arg("after") = 0.0)
      .def_static("rational", &Schedule::rational, py::arg("scale"),
                  py::arg("rate"), py::arg("offset"), py::arg("cutoff") = -1,
                  py::arg("after") = 0.0)
      .def_static("constant", &Schedule::constant_of, py::arg("value"))
      .def("value", &Schedule::value, py::arg("episode"));

  py::class_<ExplorationStrategy>(m, "ExplorationStrategy")
      .def(py::init<>())
      .def_readwrite("kind", &ExplorationStrategy::kind)
      .def_readwrite("schedule", &ExplorationStrategy::schedule)
      .def_readwrite("beta", &ExplorationStrategy::beta)
      .def_readwrite("damping", &ExplorationStrategy::damping)
      .def_readwrite("tendency", &ExplorationStrategy::tendency);

  py::class_<RurlConfig>(m, "RurlConfig")
      .def(py::init<>())
      .def_readwrite("k", &RurlConfig::k)
      .def_readwrite("pledge_episodes", &RurlConfig::pledge_episodes)
      .def_readwrite("max_steps", &RurlConfig::max_steps)
      .def_readwrite("max_episodes", &RurlConfig::max_episodes)
      .def_readwrite("omega", &RurlConfig::omega)
      .def_readwrite("b", &RurlConfig::b)
      .def_readwrite("alpha", &RurlConfig::alpha)
      .def_readwrite("gamma", &RurlConfig::gamma)
      .def_readwrite("algo", &RurlConfig::algo)
      .def_readwrite("strategy", &RurlConfig::strategy)
      .def_readwrite("seed", &RurlConfig::seed);

  py::class_<HexMap>(m, "HexMap")
      .def_static("parse", [](const std::string& text) { return load_map(text); },
                  py::arg("text"))
      .def_static("load", &load_map_file, py::arg("path"))
      .def_property_readonly("rows", &HexMap::rows)
      .def_property_readonly("cols", &HexMap::cols)
      .def_property_readonly("start", [](const HexMap& m_) { return pair_of(m_.start()); })
      .def_property_readonly("goal", [](const HexMap& m_) { return pair_of(m_.goal()); })
      .def_property_readonly("free_count", &HexMap::free_count)
      .def_property_readonly("name", &HexMap::name)
      .def_property_readonly("edge_cm",
                             [](const HexMap& m_) { return m_.edge_cm(); })
      .def("passable", [](const HexMap& m_, IJ c) { return m_.passable(coord(c)); })
      .def("render", [](const HexMap& m_) { return render_ascii(m_); })
      .def("__repr__", [](const HexMap& m_) {
        return "<HexMap " + std::to_string(m_.rows()) + "x" +
               std::to_string(m_.cols()) + ">";
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("states",
                             [](const Trajectory& t) { return pairs_of(t.states); })
      .def_property_readonly("actions",
                             [](const Trajectory& t) {
                               std::vector<int> out;
                               for (auto a : t.actions) out.push_back(static_cast<int>(a));
                               return out;
                             })
      .def("__len__", [](const Trajectory& t) { return t.length(); });

  py::class_<RegionMask>(m, "RegionMask")
      .def("contains", [](const RegionMask& r, IJ c) { return r.contains(coord(c)); })
      .def("cells", [](const RegionMask& r) { return pairs_of(r.cells()); })
      .def("__len__", &RegionMask::size);

  py::class_<Path>(m, "Path")
      .def_property_readonly("states",
                             [](const Path& p) { return pairs_of(p.states); })
      .def_property_readonly("length", &Path::length);

  py::class_<QTable>(m, "QTable")
      .def("q", [](const QTable& t, IJ s, int a) {
        return t.q(coord(s), static_cast<AbsDir>(a));
      })
      .def("best_action", [](const QTable& t, IJ s) {
        return static_cast<int>(t.best_action(coord(s)));
      });

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("steps_per_episode", &TrainResult::steps_per_episode)
      .def_readonly("total_steps", &TrainResult::total_steps)
      .def_readonly("final_greedy_path", &TrainResult::final_greedy_path)
      .def_readonly("greedy_converged", &TrainResult::greedy_converged)
      .def_readonly("table", &TrainResult::table);

  py::class_<NavEnv>(m, "NavEnv")
      .def(py::init([](const HexMap& map, long max_steps) {
             return NavEnv(map, max_steps);
           }),
           py::arg("map"), py::arg("max_steps"))
      .def("reset", [](NavEnv& env) { return pair_of(env.reset()); })
      .def("step",
           [](NavEnv& env, int action) {
             const Transition t = env.step(static_cast<AbsDir>(action));
             const char* cause = t.cause == DoneCause::Goal        ? "goal"
                                 : t.cause == DoneCause::StepLimit ? "step_limit"
                                                                   : "none";
             return py::make_tuple(pair_of(t.next_state), t.reward, t.done, cause);
           },
           py::arg("action"))
      .def_property_readonly("steps_in_episode", &NavEnv::steps_in_episode);

  py::class_<TheoremReport>(m, "TheoremReport")
      .def_readonly("theorem1_ok", &TheoremReport::theorem1_ok)
      .def_readonly("theorem2_ok", &TheoremReport::theorem2_ok)
      .def_readonly("bfs_full", &TheoremReport::bfs_full)
      .def_readonly("bfs_region", &TheoremReport::bfs_region)
      .def_readonly("splice_count", &TheoremReport::splice_count)
      .def_readonly("region_size", &TheoremReport::region_size);

  m.def("neighbors", [](IJ c) {
    std::vector<std::pair<int, IJ>> out;
    for (const auto& [d, n] : neighbors(coord(c))) {
      out.push_back({static_cast<int>(d), pair_of(n)});
    }
    return out;
  });
  m.def("step_distance", [](IJ a, IJ b) { return step_distance(coord(a), coord(b)); });
  m.def("k_ring", [](IJ c, int k) { return pairs_of(k_ring(coord(c), k)); },
        py::arg("center"), py::arg("k"));
  m.def("rasterize_dims", &rasterize_dims, py::arg("extent1_cm"),
        py::arg("extent2_cm"), py::arg("edge_cm"));
  m.def("cell_center", [](IJ c, double a) { return cell_center(coord(c), a); },
        py::arg("cell"), py::arg("edge_cm"));

  m.def("wall_follow",
        [](const HexMap& map, const std::string& hand) {
          return wall_follow(map, parse_hand(hand));
        },
        py::arg("map"), py::arg("hand"));
  m.def("reduce_trajectory",
        [](const HexMap& map, const Trajectory& t, int k) {
          return reduce_trajectory(map, t, k);
        },
        py::arg("map"), py::arg("trajectory"), py::arg("k"));
  m.def("reduce_up_to",
        [](const HexMap& map, const Trajectory& t, int k) {
          return reduce_up_to(map, t, k);
        },
        py::arg("map"), py::arg("trajectory"), py::arg("k"));
  m.def("closed_region", &closed_region, py::arg("map"), py::arg("left"),
        py::arg("right"));
  m.def("region_overlay", &region_overlay, py::arg("map"), py::arg("region"));

  m.def("bfs_shortest",
        [](const HexMap& map) { return bfs_shortest(map); }, py::arg("map"));
  m.def("astar",
        [](const HexMap& map, double edge_cm) { return astar(map, edge_cm); },
        py::arg("map"), py::arg("edge_cm"));
  m.def("aco",
        [](const HexMap& map, int n_ants, int iterations, std::uint64_t seed) {
          AcoParams p;
          p.n_ants = n_ants;
          p.iterations = iterations;
          p.seed = seed;
          return aco(map, p);
        },
        py::arg("map"), py::arg("n_ants") = 100, py::arg("iterations") = 200,
        py::arg("seed") = 0);
  m.def("direction_switches",
        [](const Path& p) { return direction_switches(p); }, py::arg("path"));

  m.def("train", &train, py::arg("config"), py::arg("map"),
        py::arg("rules_enabled"), py::arg("pledge_enabled"),
        py::call_guard<py::gil_scoped_release>());
  m.def("check_theorems", &check_theorems, py::arg("map"), py::arg("k"),
        py::call_guard<py::gil_scoped_release>());

  m.def("generate_preset", &generate_preset, py::arg("preset"), py::arg("seed"));
  m.def("preset_names", &preset_names);
  m.def("random_room", &random_room, py::arg("rows"), py::arg("cols"),
        py::arg("density"), py::arg("seed"), py::arg("clear_border") = false);
}
