#include <doctest.h>

#include <array>
#include <cmath>

#include "hexnav/learn.hpp"
#include "hexnav/mapgen.hpp"
#include "hexnav/planners.hpp"

using namespace hexnav;

namespace {

HexMap open_map(int rows, int cols, HexCoord start, HexCoord goal) {
  std::vector<CellKind> cells(static_cast<std::size_t>(rows) * cols,
                              CellKind::Free);
  return HexMap(rows, cols, std::move(cells), start, goal);
}

Transition make_t(HexCoord s, AbsDir a, double r, HexCoord s2,
                  DoneCause cause = DoneCause::None) {
  return Transition{s, a, r, s2, cause != DoneCause::None, cause};
}

RurlConfig quick_config(long episodes, long steps) {
  RurlConfig cfg;
  cfg.max_episodes = episodes;
  cfg.max_steps = steps;
  cfg.alpha = 0.2;
  cfg.gamma = 0.95;
  cfg.strategy.kind = ExplorationStrategy::Kind::EpsilonGreedy;
  cfg.strategy.schedule = Schedule::constant_of(0.2);
  return cfg;
}

}  // namespace

TEST_CASE("q_update hand values") {
  const HexMap map = open_map(3, 3, {0, 0}, {4, 2});
  QTable table(map);
  const HexCoord s{0, 0}, s2{2, 0};

  q_update(table, make_t(s, AbsDir::S, -1.0, s2), 0.01, 0.99);
  CHECK(table.q(s, AbsDir::S) == doctest::Approx(-0.01));

  QTable goal_table(map);
  q_update(goal_table, make_t(s2, AbsDir::S, 100.0, {4, 0}, DoneCause::Goal),
           0.01, 0.99);
  CHECK(goal_table.q(s2, AbsDir::S) == doctest::Approx(1.0));

  QTable boot(map);
  boot.q(s2, AbsDir::NE) = 2.0;  // max over s2 row
  q_update(boot, make_t(s, AbsDir::S, -1.0, s2), 0.01, 0.99);
  CHECK(boot.q(s, AbsDir::S) == doctest::Approx(0.0098));
}

TEST_CASE("q_update bootstraps through a step-limit ending") {
  const HexMap map = open_map(3, 3, {0, 0}, {4, 2});
  QTable table(map);
  table.q({2, 0}, AbsDir::N) = 2.0;
  q_update(table, make_t({0, 0}, AbsDir::S, -1.0, {2, 0}, DoneCause::StepLimit),
           0.01, 0.99);
  CHECK(table.q({0, 0}, AbsDir::S) == doctest::Approx(0.01 * (-1 + 0.99 * 2)));
}

TEST_CASE("sarsa_update hand values") {
  const HexMap map = open_map(3, 3, {0, 0}, {4, 2});
  const HexCoord s{0, 0}, s2{2, 0};

  QTable table(map);
  sarsa_update(table, make_t(s, AbsDir::S, -1.0, s2), AbsDir::N, 0.01, 0.99);
  CHECK(table.q(s, AbsDir::S) == doctest::Approx(-0.01));

  // On-policy bootstrap uses the chosen action's value, not the max.
  QTable onpol(map);
  onpol.q(s2, AbsDir::NE) = 2.0;
  sarsa_update(onpol, make_t(s, AbsDir::S, -1.0, s2), AbsDir::N, 0.01, 0.99);
  CHECK(onpol.q(s, AbsDir::S) == doctest::Approx(-0.01));

  // With the greedy next action both updates coincide.
  QTable q1(map), q2(map);
  q1.q(s2, AbsDir::NE) = 2.0;
  q2.q(s2, AbsDir::NE) = 2.0;
  q_update(q1, make_t(s, AbsDir::S, -1.0, s2), 0.01, 0.99);
  sarsa_update(q2, make_t(s, AbsDir::S, -1.0, s2), AbsDir::NE, 0.01, 0.99);
  CHECK(q1.q(s, AbsDir::S) == doctest::Approx(q2.q(s, AbsDir::S)));
}

TEST_CASE("TD backups converge to the hand-computed fixed point") {
  // Three-cell chain (0,0)-(2,0)-(4,0) with the goal at (4,0), gamma = 0.9:
  // q*(middle, S) = 100, q*(top, S) = -1 + 0.9*100 = 89.
  const HexMap map = open_map(3, 1, {0, 0}, {4, 0});
  QTable table(map);
  const auto top = make_t({0, 0}, AbsDir::S, -1.0, {2, 0});
  const auto mid = make_t({2, 0}, AbsDir::S, 100.0, {4, 0}, DoneCause::Goal);
  for (int sweep = 0; sweep < 4000; ++sweep) {
    q_update(table, top, 0.05, 0.9);
    q_update(table, mid, 0.05, 0.9);
  }
  CHECK(std::abs(table.q({2, 0}, AbsDir::S) - 100.0) < 1e-6);
  CHECK(std::abs(table.q({0, 0}, AbsDir::S) - 89.0) < 1e-6);
}

TEST_CASE("epsilon-greedy selection") {
  const HexMap map = open_map(3, 3, {0, 0}, {4, 2});
  QTable table(map);
  Rng rng(1);

  SUBCASE("pure greedy picks the max") {
    table.q({0, 0}, AbsDir::SE) = 1.0;
    for (int t = 0; t < 50; ++t) {
      CHECK(select_epsilon_greedy(table, {0, 0}, 0.0, rng) == AbsDir::SE);
    }
  }
  SUBCASE("all-zero table ties break to the lowest direction") {
    CHECK(select_epsilon_greedy(table, {0, 0}, 0.0, rng) == AbsDir::N);
  }
  SUBCASE("epsilon=1 is empirically uniform") {
    std::array<int, 6> counts{};
    const int n = 10000;
    for (int t = 0; t < n; ++t) {
      ++counts[static_cast<int>(select_epsilon_greedy(table, {0, 0}, 1.0, rng))];
    }
    const double mean = n / 6.0;
    const double sigma = std::sqrt(n * (1.0 / 6.0) * (5.0 / 6.0));
    for (int a = 0; a < 6; ++a) {
      CHECK(std::abs(counts[a] - mean) <= 3.0 * sigma);
    }
  }
  SUBCASE("positive scaling never changes the greedy pick") {
    table.q({0, 0}, AbsDir::SW) = 0.3;
    table.q({0, 0}, AbsDir::NE) = 0.2;
    const AbsDir before = select_epsilon_greedy(table, {0, 0}, 0.0, rng);
    for (int a = 0; a < 6; ++a) {
      table.q({0, 0}, static_cast<AbsDir>(a)) *= 77.0;
    }
    CHECK(select_epsilon_greedy(table, {0, 0}, 0.0, rng) == before);
  }
}

TEST_CASE("softmax probabilities") {
  const HexMap map = open_map(3, 3, {0, 0}, {4, 2});
  QTable table(map);

  SUBCASE("equal values give the uniform distribution") {
    const auto p = softmax_probs(table, {0, 0}, 1.0);
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 6.0));
  }
  SUBCASE("closed form for one raised value") {
    table.q({0, 0}, AbsDir::N) = 1.0;
    const auto p = softmax_probs(table, {0, 0}, 1.0);
    const double e = std::exp(1.0);
    CHECK(p[0] == doctest::Approx(e / (e + 5.0)).epsilon(1e-9));
  }
  SUBCASE("sums to one and is shift invariant") {
    table.q({0, 0}, AbsDir::NE) = 0.7;
    table.q({0, 0}, AbsDir::S) = -0.4;
    const auto p = softmax_probs(table, {0, 0}, 0.37);
    double sum = 0;
    for (double v : p) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    for (int a = 0; a < 6; ++a) table.q({0, 0}, static_cast<AbsDir>(a)) += 3.3;
    const auto q = softmax_probs(table, {0, 0}, 0.37);
    for (int a = 0; a < 6; ++a) CHECK(p[a] == doctest::Approx(q[a]).epsilon(1e-9));
  }
  SUBCASE("tiny temperature degenerates to the argmax") {
    table.q({0, 0}, AbsDir::SE) = 0.5;
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
      CHECK(select_softmax(table, {0, 0}, 1e-6, rng) == AbsDir::SE);
    }
    CHECK(select_softmax(table, {0, 0}, 0.0, rng) == AbsDir::SE);
  }
}

TEST_CASE("count bonus values and monotonicity") {
  CHECK(count_bonus(1, 0.4) == doctest::Approx(std::sqrt(0.4 / std::log(2.0))));
  CHECK(count_bonus(1, 0.4) == doctest::Approx(0.7597).epsilon(1e-3));
  CHECK(count_bonus(1, 0.5) == doctest::Approx(0.8493).epsilon(1e-3));
  double prev = count_bonus(1, 0.4);
  for (long n = 2; n < 2000; n *= 2) {
    const double b = count_bonus(n, 0.4);
    CHECK(b < prev);
    CHECK(b > 0);
    prev = b;
  }
  CHECK(count_bonus(1 << 20, 0.4) < 0.2);
  CHECK_THROWS_AS((void)count_bonus(0, 0.4), std::invalid_argument);
}

TEST_CASE("discounted UCB selection") {
  const HexMap map = open_map(3, 3, {0, 0}, {4, 2});
  QTable table(map);
  const HexCoord s{0, 0};

  SUBCASE("unvisited actions are forced first in direction order") {
    CHECK(select_ucb(table, s, 0.01) == AbsDir::N);
    ucb_record(table, s, AbsDir::N, 0.9);
    CHECK(select_ucb(table, s, 0.01) == AbsDir::NE);
  }
  SUBCASE("heavily visited action loses on equal values") {
    for (int a = 0; a < 6; ++a) ucb_record(table, s, static_cast<AbsDir>(a), 1.0);
    for (int t = 0; t < 50; ++t) ucb_record(table, s, AbsDir::N, 1.0);
    CHECK(select_ucb(table, s, 0.01) != AbsDir::N);
  }
  SUBCASE("equal counts and values tie-break to the lowest direction") {
    for (int a = 0; a < 6; ++a) {
      table.discounted_row(s)[a] = 1.0;
    }
    CHECK(select_ucb(table, s, 0.01) == AbsDir::N);
  }
  SUBCASE("record decays this state's counts and credits the action") {
    for (int a = 0; a < 6; ++a) table.discounted_row(s)[a] = 1.0;
    ucb_record(table, s, AbsDir::SE, 0.9);
    CHECK(table.discounted_visits(s, AbsDir::N) == doctest::Approx(0.9));
    CHECK(table.discounted_visits(s, AbsDir::SE) == doctest::Approx(1.9));
  }
}

TEST_CASE("pledge threshold decay") {
  CHECK(pledge_threshold(0, 10000, 0.2, 8) == doctest::Approx(1250.0));
  CHECK(pledge_threshold(10, 10000, 0.2, 8) == doctest::Approx(1000.0));
  CHECK(pledge_threshold(123, 10000, 0.0, 8) == doctest::Approx(1250.0));
  CHECK_THROWS_AS((void)pledge_threshold(1, 100, 0.2, 0), std::invalid_argument);
}

TEST_CASE("schedules") {
  const Schedule eps = Schedule::exp_decay(0.001, 3500, 0.0);
  CHECK(eps.value(0) == doctest::Approx(1.0));
  CHECK(eps.value(1000) == doctest::Approx(std::exp(-1.0)));
  CHECK(eps.value(3500) == 0.0);
  CHECK(eps.value(9000) == 0.0);

  const Schedule tau = Schedule::rational(35.0, 0.011, 1.0, 3000, 1.0);
  CHECK(tau.value(0) == doctest::Approx(35.0));
  CHECK(tau.value(1000) == doctest::Approx(35.0 / 12.0));
  CHECK(tau.value(3000) == 1.0);

  // 1/(0.4*episode) blows up at zero; the schedule saturates instead.
  const Schedule sarsa_eps = Schedule::rational(1.0, 0.4, 0.0, 500, 0.0);
  CHECK(sarsa_eps.value(0) >= 1.0);
  CHECK(sarsa_eps.value(5) == doctest::Approx(0.5));
  CHECK(sarsa_eps.value(500) == 0.0);

  CHECK(Schedule::constant_of(0.3).value(12345) == 0.3);
}

TEST_CASE("train is deterministic for equal seeds and configs") {
  const HexMap map = random_room(7, 7, 0.15, 2);
  RurlConfig cfg = quick_config(60, 300);
  cfg.seed = 99;
  const TrainResult a = train(cfg, map, false, false);
  const TrainResult b = train(cfg, map, false, false);
  CHECK(a.steps_per_episode == b.steps_per_episode);
  CHECK(a.total_steps == b.total_steps);
  CHECK(a.final_greedy_path.states == b.final_greedy_path.states);
  CHECK(a.table == b.table);

  long long sum = 0;
  for (long s : a.steps_per_episode) sum += s;
  CHECK(sum == a.total_steps);
  CHECK(a.steps_per_episode.size() == 60);
}

TEST_CASE("pledge with N=0 equals the pledge-disabled run") {
  const HexMap map = random_room(7, 7, 0.15, 4);
  RurlConfig cfg = quick_config(40, 200);
  cfg.seed = 5;
  cfg.pledge_episodes = 0;
  const TrainResult off = train(cfg, map, false, false);
  const TrainResult dead = train(cfg, map, false, true);
  CHECK(off.steps_per_episode == dead.steps_per_episode);
  CHECK(off.table == dead.table);
  for (auto used : dead.pledge_used) CHECK(used == 0);
}

TEST_CASE("greedy SARSA and Q-learning produce identical traces") {
  const HexMap map = random_room(6, 6, 0.1, 8);
  RurlConfig cfg = quick_config(50, 150);
  cfg.strategy.schedule = Schedule::constant_of(0.0);  // fully greedy behavior
  cfg.seed = 17;
  const TrainResult q = train(cfg, map, false, false);
  RurlConfig scfg = cfg;
  scfg.algo = Algo::Sarsa;
  const TrainResult s = train(scfg, map, false, false);
  CHECK(q.steps_per_episode == s.steps_per_episode);
  CHECK(q.table == s.table);
}

TEST_CASE("Q-learning converges to a BFS-length greedy path on a small room") {
  const HexMap map = open_map(5, 5, {8, 4}, {0, 0});
  RurlConfig cfg;
  cfg.max_episodes = 2000;
  cfg.max_steps = 400;
  cfg.alpha = 0.1;
  cfg.gamma = 0.99;
  cfg.strategy.schedule = Schedule::exp_decay(0.001, 3500, 0.0);
  const int want = bfs_shortest(map)->length();
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    cfg.seed = seed;
    const TrainResult r = train(cfg, map, false, false);
    REQUIRE(r.greedy_converged);
    CHECK(static_cast<int>(r.final_greedy_path.length()) == want);
  }
}

TEST_CASE("count-based and UCB strategies still reach convergence") {
  const HexMap map = open_map(4, 4, {6, 2}, {0, 0});
  RurlConfig cfg = quick_config(800, 300);
  cfg.alpha = 0.1;
  const int want = bfs_shortest(map)->length();

  cfg.strategy.kind = ExplorationStrategy::Kind::CountBased;
  cfg.seed = 3;
  const TrainResult c = train(cfg, map, false, false);
  CHECK(c.greedy_converged);
  CHECK(static_cast<int>(c.final_greedy_path.length()) == want);

  cfg.strategy.kind = ExplorationStrategy::Kind::Ucb;
  const TrainResult u = train(cfg, map, false, false);
  CHECK(u.greedy_converged);
  CHECK(static_cast<int>(u.final_greedy_path.length()) == want);
}

TEST_CASE("rules and pledge run end to end on a generated map") {
  const HexMap map = random_room(10, 9, 0.18, 12);
  RurlConfig cfg = quick_config(120, 400);
  cfg.k = 2;
  cfg.pledge_episodes = 30;
  cfg.omega = 0.2;
  cfg.b = 8;
  cfg.seed = 21;
  const TrainResult r = train(cfg, map, true, true);
  CHECK(r.steps_per_episode.size() == 120);
  bool any_pledge = false;
  for (auto used : r.pledge_used) any_pledge |= used != 0;
  CHECK(any_pledge);
  // Later episodes never use the pledge rule.
  for (std::size_t ep = 30; ep < r.pledge_used.size(); ++ep) {
    CHECK(r.pledge_used[ep] == 0);
  }
}

TEST_CASE("train refuses unsolvable maps") {
  const HexMap map = load_map("B..\n.##\n.#G\n");
  CHECK_THROWS_AS((void)train(quick_config(5, 10), map, false, false), NavError);
}
