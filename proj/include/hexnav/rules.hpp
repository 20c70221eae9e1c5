#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hexnav/map.hpp"

namespace hexnav {

// Egocentric actions; the enum value is the clockwise offset added to the
// current heading: front, right-front, right-rear, rear, left-rear,
// left-front.
enum class RelAction : int { F = 0, RF = 1, RR = 2, R = 3, LR = 4, LF = 5 };

enum class Hand { Left, Right };

enum class Chirality { Counterclockwise, Clockwise };

// State-action record of one walk. actions[t] moves states[t] to
// states[t+1]; every state is Free on the source map.
struct Trajectory {
  std::vector<HexCoord> states;
  std::vector<AbsDir> actions;

  std::size_t length() const { return actions.size(); }
};

// Running state of the Pledge walk: accumulated signed turns in 60-degree
// units, the heading the last action left us with, and which way the turn
// counter winds.
struct PledgeState {
  int theta = 0;
  AbsDir heading = AbsDir::N;
  Chirality chirality = Chirality::Counterclockwise;
};

// Cells on or enclosed by the closed loop of two trajectories.
class RegionMask {
 public:
  RegionMask(int rows, int cols)
      : rows_(rows), cols_(cols),
        inside_(static_cast<std::size_t>(rows) * cols, 0) {}

  static RegionMask all_free(const HexMap& map);

  bool contains(HexCoord c) const {
    if (c.j < 0 || c.j >= cols_ || c.i < 0 || c.i >= 2 * rows_ ||
        (c.i & 1) != (c.j & 1)) {
      return false;
    }
    return inside_[static_cast<std::size_t>(c.i >> 1) * cols_ + c.j] != 0;
  }

  void insert(HexCoord c) {
    inside_[static_cast<std::size_t>(c.i >> 1) * cols_ + c.j] = 1;
  }

  int size() const;
  std::vector<HexCoord> cells() const;
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_;
  int cols_;
  std::vector<std::uint8_t> inside_;
};

// One shortcut taken by reduce_trajectory: states[i..j] were replaced by a
// k-step path. The replaced segment length j - i is always > k.
struct SpliceRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  int k = 0;
};

constexpr AbsDir relative_to_absolute(AbsDir heading, RelAction rel) {
  return static_cast<AbsDir>((static_cast<int>(heading) + static_cast<int>(rel)) % 6);
}

// Wall-following walk from start to goal. At every step the highest-priority
// egocentric action whose target is in bounds and Free is taken; the heading
// becomes that action. Right hand scans RF>F>LF>LR>R>RR, left hand the
// mirror LF>F>RF>RR>R>LR.
// step_cap <= 0 means the default 20 * cell_count.
Trajectory wall_follow(const HexMap& map, Hand hand, long step_cap = 0,
                       AbsDir initial_heading = AbsDir::N);

// One obstacle-free path of exactly k steps from s to s2 (which must be at
// step distance k), or nullopt when every such path is blocked. Candidate
// moves always reduce the remaining step distance, and ties resolve to the
// lexicographically smallest action sequence.
std::optional<std::vector<HexCoord>> k_step_path(const HexMap& map, HexCoord s,
                                                 HexCoord s2, int k);

// Shortcut pass: repeatedly, scanning from the front of the live list, find
// the farthest later state at ring distance k whose trajectory distance
// exceeds k and that is reachable by an unblocked k-step path, and splice
// that path in. Runs to a fixed point; output never grows and keeps the
// endpoints.
Trajectory reduce_trajectory(const HexMap& map, const Trajectory& traj, int k,
                             std::vector<SpliceRecord>* splices = nullptr);

// Progressive reduction with step sizes 1..k, each to its fixed point; this
// is the form the training pipeline uses.
Trajectory reduce_up_to(const HexMap& map, const Trajectory& traj, int k,
                        std::vector<SpliceRecord>* splices = nullptr);

// Cells of both trajectories plus every Free cell that cannot reach a
// one-cell virtual margin around the map without stepping on a trajectory
// cell.
RegionMask closed_region(const HexMap& map, const Trajectory& left,
                         const Trajectory& right);

// One Pledge step. With theta == 0 the scan prefers going straight and then
// deviating away from the wall-following side; otherwise it is the plain
// wall-following scan. theta accumulates the signed turn (clockwise positive
// for the counterclockwise chirality, mirrored for the clockwise one); a
// rear move counts as +3 from the wall scan and -3 from the theta-0 scan.
std::pair<AbsDir, PledgeState> pledge_action(const HexMap& map, HexCoord pos,
                                             PledgeState st);

// Same, with cells outside `allowed` treated as walls (used inside the
// restricted training environment).
std::pair<AbsDir, PledgeState> pledge_action(const HexMap& map,
                                             const RegionMask* allowed,
                                             HexCoord pos, PledgeState st);

// True when states/actions are mutually consistent, every state is Free and
// the last state is the map goal.
bool trajectory_valid(const HexMap& map, const Trajectory& traj);

// Rebuild the action list from consecutive states (which must be adjacent).
std::vector<AbsDir> actions_from_states(const std::vector<HexCoord>& states);

}  // namespace hexnav
