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

#ifndef DRONESWEEP_DECOMP_HPP
#define DRONESWEEP_DECOMP_HPP

#include <vector>

#include "dronesweep/geom.hpp"

namespace dronesweep {
namespace decomp {

struct SubArea {
  geom::ConvexPolygon polygon;
  double proportion = 0.0;
  int drone_id = 0;
};

// Proportional slicing of a convex area with one shared sweep direction.
// Sub-areas are ordered by increasing offset along the min-width axis;
// drone ids follow that order.
struct DecompositionPlan {
  double sweep_direction = 0.0;        // angle of the cut/lap lines
  double min_diameter_direction = 0.0; // perpendicular axis of minimal width
  std::vector<SubArea> sub_areas;
};

// Cuts the polygon into parts with areas proportion[i] * total, using
// divide lines parallel to the optimal sweep direction (perpendicular to
// the minimum-width axis). Proportions must be positive and sum to 1
// within 1e-9.
DecompositionPlan decompose(const geom::ConvexPolygon& polygon,
                            const std::vector<double>& proportions);

// Hands the unswept remainder of a failed drone's sub-area to the
// neighbor across the dividing line on the failed drone's unswept side
// (tie: lower drone id). The neighbor's polygon becomes the convex union
// of its own sub-area and the remainder. Throws std::runtime_error when
// no live neighbor exists.
DecompositionPlan reassign_on_failure(const DecompositionPlan& plan,
                                      int failed_drone,
                                      const geom::ConvexPolygon& unswept);

}  // namespace decomp
}  // namespace dronesweep

#endif  // DRONESWEEP_DECOMP_HPP
