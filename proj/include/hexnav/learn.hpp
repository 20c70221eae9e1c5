#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hexnav/env.hpp"
#include "hexnav/map.hpp"
#include "hexnav/rng.hpp"
#include "hexnav/rules.hpp"

namespace hexnav {

// Dense state x action value table plus per-pair visit statistics. Values
// default to zero for unseen pairs. Cells are addressed with the map's dense
// index.
class QTable {
 public:
  explicit QTable(const HexMap& map)
      : cols_(map.cols()),
        q_(static_cast<std::size_t>(map.cell_count())),
        visits_(static_cast<std::size_t>(map.cell_count())),
        discounted_(static_cast<std::size_t>(map.cell_count())) {}

  int index(HexCoord c) const { return (c.i >> 1) * cols_ + c.j; }

  double q(HexCoord s, AbsDir a) const {
    return q_[index(s)][static_cast<int>(a)];
  }
  double& q(HexCoord s, AbsDir a) { return q_[index(s)][static_cast<int>(a)]; }

  const std::array<double, 6>& row(HexCoord s) const { return q_[index(s)]; }

  long visits(HexCoord s, AbsDir a) const {
    return visits_[index(s)][static_cast<int>(a)];
  }
  long& visits(HexCoord s, AbsDir a) {
    return visits_[index(s)][static_cast<int>(a)];
  }

  double discounted_visits(HexCoord s, AbsDir a) const {
    return discounted_[index(s)][static_cast<int>(a)];
  }
  std::array<double, 6>& discounted_row(HexCoord s) {
    return discounted_[index(s)];
  }

  // Greedy action with the lowest-direction tie break.
  AbsDir best_action(HexCoord s) const {
    const auto& row = q_[index(s)];
    int best = 0;
    for (int a = 1; a < kNumDirs; ++a) {
      if (row[a] > row[best]) best = a;
    }
    return static_cast<AbsDir>(best);
  }

  double max_q(HexCoord s) const {
    const auto& row = q_[index(s)];
    double m = row[0];
    for (int a = 1; a < kNumDirs; ++a) m = std::max(m, row[a]);
    return m;
  }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  int cols_;
  std::vector<std::array<double, 6>> q_;
  std::vector<std::array<long, 6>> visits_;
  std::vector<std::array<double, 6>> discounted_;
};

// Per-episode scalar schedule (exploration ratio or temperature).
struct Schedule {
  enum class Kind { ExpDecay, RationalDecay, Constant };
  Kind kind = Kind::Constant;
  double rate = 0.0;    // ExpDecay: exp(-rate*episode); Rational: denominator slope
  double scale = 1.0;   // Rational: numerator
  double offset = 0.0;  // Rational: denominator intercept
  long cutoff = -1;     // episodes >= cutoff evaluate to `after`; -1 = never
  double after = 0.0;
  double constant = 0.0;

  double value(long episode) const;

  static Schedule exp_decay(double rate, long cutoff, double after);
  static Schedule rational(double scale, double rate, double offset,
                           long cutoff, double after);
  static Schedule constant_of(double v);
};

struct ExplorationStrategy {
  enum class Kind { EpsilonGreedy, Softmax, CountBased, Ucb };
  Kind kind = Kind::EpsilonGreedy;
  // Default: the single-room protocol, exp(-0.001*episode) until episode
  // 3500 and zero afterwards.
  Schedule schedule = Schedule::exp_decay(0.001, 3500, 0.0);
  double beta = 0.4;       // count-based bonus coefficient
  double damping = 0.9;    // UCB visit-count decay d
  double tendency = 0.01;  // UCB exploration constant C'
};

enum class Algo { QLearning, Sarsa };

struct RurlConfig {
  int k = 3;                   // trajectory optimization step
  long pledge_episodes = 100;  // N: episodes that may use the Pledge rule
  long max_steps = 10000;      // M_max per episode
  long max_episodes = 7000;    // T_max
  double omega = 0.2;          // threshold decay slope
  double b = 8.0;              // threshold decay intercept
  double alpha = 0.01;
  double gamma = 0.99;
  Algo algo = Algo::QLearning;
  ExplorationStrategy strategy;
  std::uint64_t seed = 0;
  AbsDir initial_heading = AbsDir::N;
};

struct TrainResult {
  std::vector<long> steps_per_episode;
  std::vector<std::uint8_t> pledge_used;  // per episode
  long long total_steps = 0;
  Trajectory final_greedy_path;
  bool greedy_converged = false;
  QTable table;
};

// One Q-learning backup: q(s,a) += alpha*(r + gamma*max_a' q(s',a') - q(s,a)),
// with a zero bootstrap on goal transitions.
void q_update(QTable& table, const Transition& t, double alpha, double gamma);

// SARSA backup, bootstrapping with q(s', next_action); zero on goal.
void sarsa_update(QTable& table, const Transition& t, AbsDir next_action,
                  double alpha, double gamma);

AbsDir select_epsilon_greedy(const QTable& table, HexCoord s, double epsilon,
                             Rng& rng);

// Boltzmann probabilities with max-subtraction for stability.
std::array<double, 6> softmax_probs(const QTable& table, HexCoord s, double tau);
AbsDir select_softmax(const QTable& table, HexCoord s, double tau, Rng& rng);

// Exploration bonus sqrt(beta / ln(visits + 1)); visits is the count after
// the increment-first bookkeeping, so it is always >= 1.
double count_bonus(long visits, double beta);

// Discounted-UCB pick: unvisited actions first in direction order, otherwise
// argmax of q + C'*sqrt(ln(sum_n)/n) over the discounted counts. Pure
// selection; the caller decays and increments counts on execution.
AbsDir select_ucb(const QTable& table, HexCoord s, double tendency);

// Decay this state's discounted counts by d and credit the executed action.
void ucb_record(QTable& table, HexCoord s, AbsDir taken, double damping);

// Pledge-phase step threshold E = M_max / (omega * episode + b).
double pledge_threshold(long episode, long m_max, double omega, double b);

// The full training loop. With rules_enabled the environment is restricted
// to the closed region of both reduced wall-following trajectories (step
// sizes 1..K); with pledge_enabled episodes <= N switch to the Pledge rule
// once the step count passes the decaying threshold, counterclockwise on odd
// episodes, value updates continuing throughout.
TrainResult train(const RurlConfig& config, const HexMap& map,
                  bool rules_enabled, bool pledge_enabled);

}  // namespace hexnav
