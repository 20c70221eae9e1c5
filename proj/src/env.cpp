#include "hexnav/env.hpp"

#include <stdexcept>

namespace hexnav {

NavEnv::NavEnv(HexMap map, long max_steps)
    : map_(std::move(map)), max_steps_(max_steps) {
  if (max_steps_ < 1) throw std::invalid_argument("NavEnv: max_steps must be >= 1");
  build_transition_table();
  start_idx_ = map_.index_of(map_.start());
  goal_idx_ = map_.index_of(map_.goal());
  pos_idx_ = start_idx_;
}

NavEnv::NavEnv(HexMap map, RegionMask allowed, long max_steps)
    : map_(std::move(map)), allowed_(std::move(allowed)), max_steps_(max_steps) {
  if (max_steps_ < 1) throw std::invalid_argument("NavEnv: max_steps must be >= 1");
  if (!allowed_->contains(map_.start()) || !allowed_->contains(map_.goal())) {
    throw std::invalid_argument("NavEnv: region must contain start and goal");
  }
  build_transition_table();
  start_idx_ = map_.index_of(map_.start());
  goal_idx_ = map_.index_of(map_.goal());
  pos_idx_ = start_idx_;
}

void NavEnv::build_transition_table() {
  next_cell_.assign(static_cast<std::size_t>(map_.cell_count()) * kNumDirs, -1);
  for (int idx = 0; idx < map_.cell_count(); ++idx) {
    const HexCoord c = map_.coord_of(idx);
    if (!passable(c)) continue;
    for (int d = 0; d < kNumDirs; ++d) {
      const HexCoord tgt = neighbor(c, static_cast<AbsDir>(d));
      if (passable(tgt)) {
        next_cell_[static_cast<std::size_t>(idx) * kNumDirs + d] = map_.index_of(tgt);
      }
    }
  }
}

HexCoord NavEnv::reset() {
  pos_idx_ = start_idx_;
  steps_ = 0;
  done_ = false;
  return map_.start();
}

Transition NavEnv::step(AbsDir action) {
  if (done_) throw std::logic_error("NavEnv::step: episode is done");
  Transition t;
  t.state = map_.coord_of(pos_idx_);
  t.action = action;

  const int tgt = next_cell_[static_cast<std::size_t>(pos_idx_) * kNumDirs +
                             static_cast<int>(action)];
  if (tgt < 0) {
    t.reward = -100.0;
    t.next_state = t.state;
  } else if (tgt == goal_idx_) {
    t.reward = 100.0;
    t.next_state = map_.coord_of(tgt);
    pos_idx_ = tgt;
    done_ = true;
    t.cause = DoneCause::Goal;
  } else {
    t.reward = -1.0;
    t.next_state = map_.coord_of(tgt);
    pos_idx_ = tgt;
  }

  ++steps_;
  if (!done_ && steps_ >= max_steps_) {
    done_ = true;
    t.cause = DoneCause::StepLimit;
  }
  t.done = done_;
  return t;
}

NavEnv restrict(const HexMap& map, const RegionMask& region, long max_steps) {
  return NavEnv(map, region, max_steps);
}

}  // namespace hexnav
