#pragma once

#include <optional>
#include <vector>

#include "hexnav/map.hpp"
#include "hexnav/rules.hpp"

namespace hexnav {

enum class DoneCause { None, Goal, StepLimit };

struct Transition {
  HexCoord state;
  AbsDir action;
  double reward;
  HexCoord next_state;
  bool done = false;
  DoneCause cause = DoneCause::None;
};

// Deterministic episodic navigation MDP. Moving into an obstacle, out of
// bounds, or out of the allowed region bounces the agent back for -100;
// reaching the goal pays +100 and ends the episode; anything else costs -1.
// Hitting max_steps without the goal ends the episode with no extra reward.
class NavEnv {
 public:
  NavEnv(HexMap map, long max_steps);
  NavEnv(HexMap map, RegionMask allowed, long max_steps);

  HexCoord reset();
  Transition step(AbsDir action);

  const HexMap& map() const { return map_; }
  const std::optional<RegionMask>& allowed() const { return allowed_; }
  HexCoord pos() const { return map_.coord_of(pos_idx_); }
  long steps_in_episode() const { return steps_; }
  long max_steps() const { return max_steps_; }
  bool done() const { return done_; }

  // Region-aware passability; what the Pledge rule sees during training.
  bool passable(HexCoord c) const {
    return map_.passable(c) && (!allowed_ || allowed_->contains(c));
  }

 private:
  void build_transition_table();

  HexMap map_;
  std::optional<RegionMask> allowed_;
  long max_steps_;
  std::vector<int> next_cell_;  // cell*6+a -> target index, -1 when blocked
  int start_idx_;
  int goal_idx_;
  int pos_idx_;
  long steps_ = 0;
  bool done_ = false;
};

// Environment whose step treats cells outside `region` exactly as obstacles.
// The region must contain start and goal.
NavEnv restrict(const HexMap& map, const RegionMask& region, long max_steps);

}  // namespace hexnav
