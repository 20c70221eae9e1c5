#include "hexnav/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hexnav/planners.hpp"

namespace hexnav {

double Schedule::value(long episode) const {
  if (cutoff >= 0 && episode >= cutoff) return after;
  switch (kind) {
    case Kind::Constant:
      return constant;
    case Kind::ExpDecay:
      return std::exp(-rate * static_cast<double>(episode));
    case Kind::RationalDecay: {
      const double denom = rate * static_cast<double>(episode) + offset;
      if (denom <= 0.0) return 1e9;  // degenerate start, effectively "explore"
      return scale / denom;
    }
  }
  return 0.0;
}

Schedule Schedule::exp_decay(double rate, long cutoff, double after) {
  Schedule s;
  s.kind = Kind::ExpDecay;
  s.rate = rate;
  s.cutoff = cutoff;
  s.after = after;
  return s;
}

Schedule Schedule::rational(double scale, double rate, double offset,
                            long cutoff, double after) {
  Schedule s;
  s.kind = Kind::RationalDecay;
  s.scale = scale;
  s.rate = rate;
  s.offset = offset;
  s.cutoff = cutoff;
  s.after = after;
  return s;
}

Schedule Schedule::constant_of(double v) {
  Schedule s;
  s.kind = Kind::Constant;
  s.constant = v;
  return s;
}

void q_update(QTable& table, const Transition& t, double alpha, double gamma) {
  const double bootstrap =
      t.cause == DoneCause::Goal ? 0.0 : table.max_q(t.next_state);
  double& q = table.q(t.state, t.action);
  q += alpha * (t.reward + gamma * bootstrap - q);
}

void sarsa_update(QTable& table, const Transition& t, AbsDir next_action,
                  double alpha, double gamma) {
  const double bootstrap =
      t.cause == DoneCause::Goal ? 0.0 : table.q(t.next_state, next_action);
  double& q = table.q(t.state, t.action);
  q += alpha * (t.reward + gamma * bootstrap - q);
}

AbsDir select_epsilon_greedy(const QTable& table, HexCoord s, double epsilon,
                             Rng& rng) {
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return static_cast<AbsDir>(rng.uniform_int(kNumDirs));
  }
  return table.best_action(s);
}

std::array<double, 6> softmax_probs(const QTable& table, HexCoord s, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("softmax_probs: tau must be > 0");
  const auto& row = table.row(s);
  const double m = *std::max_element(row.begin(), row.end());
  std::array<double, 6> p{};
  double sum = 0.0;
  for (int a = 0; a < kNumDirs; ++a) {
    p[a] = std::exp((row[a] - m) / tau);
    sum += p[a];
  }
  for (double& v : p) v /= sum;
  return p;
}

AbsDir select_softmax(const QTable& table, HexCoord s, double tau, Rng& rng) {
  if (tau < 1e-12) return table.best_action(s);
  const auto p = softmax_probs(table, s, tau);
  return static_cast<AbsDir>(rng.weighted({p.data(), p.size()}));
}

double count_bonus(long visits, double beta) {
  if (visits < 1) throw std::invalid_argument("count_bonus: visits must be >= 1");
  return std::sqrt(beta / std::log(static_cast<double>(visits) + 1.0));
}

AbsDir select_ucb(const QTable& table, HexCoord s, double tendency) {
  std::array<double, 6> counts{};
  for (int a = 0; a < kNumDirs; ++a) {
    counts[a] = table.discounted_visits(s, static_cast<AbsDir>(a));
    if (counts[a] <= 0.0) return static_cast<AbsDir>(a);  // unvisited first
  }
  double total = 0.0;
  for (double n : counts) total += n;
  total = std::max(total, 1.0);
  const auto& row = table.row(s);
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < kNumDirs; ++a) {
    const double score = row[a] + tendency * std::sqrt(std::log(total) / counts[a]);
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return static_cast<AbsDir>(best);
}

void ucb_record(QTable& table, HexCoord s, AbsDir taken, double damping) {
  auto& row = table.discounted_row(s);
  for (double& n : row) n *= damping;
  row[static_cast<int>(taken)] += 1.0;
}

double pledge_threshold(long episode, long m_max, double omega, double b) {
  if (b <= 0 || omega < 0) {
    throw std::invalid_argument("pledge_threshold: need omega >= 0 and b > 0");
  }
  return static_cast<double>(m_max) /
         (omega * static_cast<double>(episode) + b);
}

TrainResult train(const RurlConfig& config, const HexMap& map,
                  bool rules_enabled, bool pledge_enabled) {
  if (!bfs_shortest(map)) throw NavError("map is unsolvable");

  NavEnv env = [&] {
    if (!rules_enabled) return NavEnv(map, config.max_steps);
    auto left = wall_follow(map, Hand::Left, 0, config.initial_heading);
    auto right = wall_follow(map, Hand::Right, 0, config.initial_heading);
    left = reduce_up_to(map, left, config.k);
    right = reduce_up_to(map, right, config.k);
    return NavEnv(map, closed_region(map, left, right), config.max_steps);
  }();

  QTable table(map);
  Rng rng(config.seed);
  std::vector<long> steps_per_episode;
  steps_per_episode.reserve(static_cast<std::size_t>(config.max_episodes));
  std::vector<std::uint8_t> pledge_used;
  pledge_used.reserve(static_cast<std::size_t>(config.max_episodes));

  const auto& strategy = config.strategy;
  auto pick = [&](HexCoord s, long episode) -> AbsDir {
    switch (strategy.kind) {
      case ExplorationStrategy::Kind::EpsilonGreedy:
      case ExplorationStrategy::Kind::CountBased: {
        const double eps = std::clamp(strategy.schedule.value(episode), 0.0, 1.0);
        return select_epsilon_greedy(table, s, eps, rng);
      }
      case ExplorationStrategy::Kind::Softmax:
        return select_softmax(table, s, strategy.schedule.value(episode), rng);
      case ExplorationStrategy::Kind::Ucb:
        return select_ucb(table, s, strategy.tendency);
    }
    return AbsDir::N;
  };

  const RegionMask* allowed =
      env.allowed() ? &*env.allowed() : nullptr;

  for (long ep = 1; ep <= config.max_episodes; ++ep) {
    HexCoord pos = env.reset();
    const double threshold =
        pledge_threshold(ep, config.max_steps, config.omega, config.b);
    const bool pledge_eligible = pledge_enabled && ep <= config.pledge_episodes;
    bool pledge_phase = false;
    bool pledge_any = false;
    PledgeState pledge;

    const PledgeState fresh{0, config.initial_heading,
                            ep % 2 == 1 ? Chirality::Counterclockwise
                                        : Chirality::Clockwise};
    auto pledge_now = [&] {
      return pledge_eligible &&
             static_cast<double>(env.steps_in_episode()) >= threshold;
    };
    auto choose = [&](HexCoord s) -> AbsDir {
      if (pledge_now()) {
        if (!pledge_phase) {
          pledge = fresh;
          pledge_phase = true;
        }
        pledge_any = true;
        auto [a, next] = pledge_action(env.map(), allowed, s, pledge);
        pledge = next;
        return a;
      }
      return pick(s, ep);
    };
    // What the policy would do at s without advancing the pledge walk; the
    // SARSA bootstrap samples this as a pure read of the policy.
    auto preview = [&](HexCoord s) -> AbsDir {
      if (pledge_now()) {
        const PledgeState tmp = pledge_phase ? pledge : fresh;
        return pledge_action(env.map(), allowed, s, tmp).first;
      }
      return pick(s, ep);
    };

    while (!env.done()) {
      const AbsDir a = choose(pos);

      ++table.visits(pos, a);
      if (strategy.kind == ExplorationStrategy::Kind::Ucb) {
        ucb_record(table, pos, a, strategy.damping);
      }

      Transition t = env.step(a);
      if (strategy.kind == ExplorationStrategy::Kind::CountBased) {
        t.reward += count_bonus(table.visits(t.state, a), strategy.beta);
      }

      if (config.algo == Algo::QLearning) {
        q_update(table, t, config.alpha, config.gamma);
      } else {
        AbsDir next_action = AbsDir::N;
        if (t.cause != DoneCause::Goal) next_action = preview(t.next_state);
        sarsa_update(table, t, next_action, config.alpha, config.gamma);
      }
      pos = t.next_state;
    }

    steps_per_episode.push_back(env.steps_in_episode());
    pledge_used.push_back(pledge_any ? 1 : 0);
  }

  // Greedy rollout from start; a bounce, a revisit, or running past the free
  // cell count marks the result as non-convergent instead of failing.
  Trajectory greedy;
  bool converged = false;
  {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(map.cell_count()), 0);
    HexCoord pos = map.start();
    greedy.states.push_back(pos);
    seen[map.index_of(pos)] = 1;
    for (int hop = 0; hop < map.free_count(); ++hop) {
      if (pos == map.goal()) {
        converged = true;
        break;
      }
      const AbsDir a = table.best_action(pos);
      const HexCoord tgt = neighbor(pos, a);
      if (!env.passable(tgt) || seen[map.index_of(tgt)]) break;
      greedy.actions.push_back(a);
      greedy.states.push_back(tgt);
      seen[map.index_of(tgt)] = 1;
      pos = tgt;
    }
    if (pos == map.goal()) converged = true;
  }

  TrainResult result{std::move(steps_per_episode), std::move(pledge_used), 0,
                     std::move(greedy), converged, std::move(table)};
  for (long s : result.steps_per_episode) result.total_steps += s;
  return result;
}

}  // namespace hexnav
