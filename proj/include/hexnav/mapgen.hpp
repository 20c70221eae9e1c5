#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hexnav/map.hpp"

namespace hexnav {

// Bundled synthetic environments. Every preset is produced by a seeded
// generator and validated before being returned: the map is solvable, start
// and goal sit in opposite border corners (hence wall-adjacent), and both
// wall-following hands reach the goal.
//   room-35x19-open       single room, no obstacles
//   room-35x19-obstacles  single room with scattered obstacle blocks
//   multiroom-87x59       four-plus rooms with door gaps and light clutter
HexMap generate_preset(std::string_view preset, std::uint64_t seed);

std::vector<std::string> preset_names();

// Random single room with ~density obstacle fill, start bottom-right and
// goal top-left. Internally retries derived seeds until the validity checks
// above pass, so equal arguments always give the same map. With clear_border
// the outermost ring stays free, giving the room an unobstructed perimeter
// corridor like the paper's single-room environments.
HexMap random_room(int rows, int cols, double density, std::uint64_t seed,
                   bool clear_border = false);

}  // namespace hexnav
