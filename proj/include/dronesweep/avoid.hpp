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

#ifndef DRONESWEEP_AVOID_HPP
#define DRONESWEEP_AVOID_HPP

#include <optional>
#include <stdexcept>

#include "dronesweep/geom.hpp"

namespace dronesweep {
namespace avoid {

// Relative kinematics of a drone pair: d = pos(A) - pos(B),
// c = vel(A) - vel(B).
struct RelativeState {
  geom::Vec2 d;
  geom::Vec2 c;
};

struct AvoidanceParams {
  double shared_location_radius_m = 10.0;  // r_s, position sharing blur
  double safe_distance_m = 50.0;           // required miss distance
  double target_margin_m = 100.0;          // total extra pass distance to add
  double max_correction_m = 200.0;         // clamp on each correction

  void validate() const {
    if (!(safe_distance_m > 2.0 * shared_location_radius_m)) {
      throw std::invalid_argument(
          "AvoidanceParams: safe distance must exceed twice the shared "
          "location radius");
    }
    if (!(target_margin_m > 0.0) || !(max_correction_m > 0.0)) {
      throw std::invalid_argument(
          "AvoidanceParams: margin and correction limit must be > 0");
    }
  }
};

// Perpendicular component of the relative position with respect to the
// relative velocity: the miss vector if neither drone maneuvers.
// Requires a nonzero relative velocity.
geom::Vec2 pass_distance(const RelativeState& rel);

// Time of minimum separation for constant velocities; negative when the
// pair is already separating. Requires a nonzero relative velocity.
double closest_approach_time(const RelativeState& rel);

struct KinematicState {
  geom::Point2 pos;
  geom::Vec2 vel;
};

struct Correction {
  geom::Vec2 u_a;  // displacement setpoint relative to A's position
  geom::Vec2 u_b;
};

// Returns corrections when the pair is approaching (tau > 0) and the
// predicted miss distance is below the safe distance; empty otherwise.
// Corrections push the drones apart along the pass-distance axis with a
// speed-proportional split of the target margin, each clamped to the
// correction limit.
std::optional<Correction> plan_avoidance(const KinematicState& a,
                                         const KinematicState& b,
                                         const AvoidanceParams& params);

}  // namespace avoid
}  // namespace dronesweep

#endif  // DRONESWEEP_AVOID_HPP
