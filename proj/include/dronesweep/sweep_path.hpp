// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRONESWEEP_SWEEP_PATH_HPP
#define DRONESWEEP_SWEEP_PATH_HPP

#include <cstddef>
#include <vector>

#include "dronesweep/geom.hpp"

namespace dronesweep {
namespace sweep_path {

// Boustrophedon waypoint path over a convex area. Laps are maximal
// chords parallel to the sweep direction, joined by boundary-following
// transitions; every point of the area is within the coverage radius of
// the polyline.
struct ZigzagPath {
  std::vector<geom::Point2> waypoints;
  double lap_spacing = 0.0;
  double sweep_direction = 0.0;
  std::size_t lap_count = 0;
  std::vector<double> lap_offsets;          // stepping-axis offset per lap
  std::vector<std::size_t> lap_end_index;   // waypoint index ending each lap
};

ZigzagPath generate_zigzag(const geom::ConvexPolygon& area,
                           double sweep_direction, double coverage_radius,
                           double overlap = 0.0);

double path_length(const ZigzagPath& path);

}  // namespace sweep_path
}  // namespace dronesweep

#endif  // DRONESWEEP_SWEEP_PATH_HPP
