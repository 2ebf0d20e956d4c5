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

#include "dronesweep/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dronesweep {
namespace decomp {

namespace {

constexpr double kPi = std::numbers::pi;

// Andrew monotone chain; input points need not be ordered.
std::vector<geom::Point2> convex_hull(std::vector<geom::Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<geom::Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower &&
           (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::pair<double, double> offset_range(const geom::ConvexPolygon& poly,
                                       const geom::Vec2& axis) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : poly.vertices()) {
    const double t = v.x * axis.dx + v.y * axis.dy;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return {lo, hi};
}

}  // namespace

DecompositionPlan decompose(const geom::ConvexPolygon& polygon,
                            const std::vector<double>& proportions) {
  if (proportions.empty()) {
    throw std::domain_error("decompose: empty proportion list");
  }
  double sum = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0)) {
      throw std::domain_error("decompose: proportions must be > 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("decompose: proportions must sum to 1");
  }

  const auto [theta_opt, d_min] = polygon.min_diameter();
  (void)d_min;
  double sweep = theta_opt + kPi / 2.0;
  if (sweep >= kPi) sweep -= kPi;

  DecompositionPlan plan;
  plan.sweep_direction = sweep;
  plan.min_diameter_direction = theta_opt;

  const double total = polygon.area();
  const std::size_t s = proportions.size();
  std::vector<geom::ConvexPolygon> pieces;
  geom::ConvexPolygon remaining = polygon;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    auto [low, high] = remaining.slice(sweep, proportions[i] * total);
    pieces.push_back(std::move(low));
    remaining = std::move(high);
  }
  pieces.push_back(std::move(remaining));

  for (std::size_t i = 0; i < s; ++i) {
    plan.sub_areas.push_back(
        {std::move(pieces[i]), proportions[i], static_cast<int>(i)});
  }
  return plan;
}

DecompositionPlan reassign_on_failure(const DecompositionPlan& plan,
                                      int failed_drone,
                                      const geom::ConvexPolygon& unswept) {
  const std::size_t s = plan.sub_areas.size();
  std::size_t failed_idx = s;
  for (std::size_t i = 0; i < s; ++i) {
    if (plan.sub_areas[i].drone_id == failed_drone) failed_idx = i;
  }
  if (failed_idx == s) {
    throw std::invalid_argument("reassign_on_failure: unknown drone id");
  }
  if (s < 2) {
    throw std::runtime_error(
        "reassign_on_failure: no adjacent drone to take over");
  }

  // The neighbor across the dividing line the unswept region touches
  // takes over; ties go to the lower drone id.
  const geom::Vec2 axis = geom::unit(plan.min_diameter_direction);
  const auto [f_lo, f_hi] = offset_range(plan.sub_areas[failed_idx].polygon, axis);
  const auto [u_lo, u_hi] = offset_range(unswept, axis);
  const double gap_lo = std::abs(u_lo - f_lo);
  const double gap_hi = std::abs(f_hi - u_hi);

  std::size_t neighbor;
  const bool has_prev = failed_idx > 0;
  const bool has_next = failed_idx + 1 < s;
  if (!has_prev) {
    neighbor = failed_idx + 1;
  } else if (!has_next) {
    neighbor = failed_idx - 1;
  } else if (std::abs(gap_lo - gap_hi) <= 1e-9 * std::max(1.0, f_hi - f_lo)) {
    neighbor = failed_idx - 1;  // tie: lower drone id
  } else {
    neighbor = gap_lo < gap_hi ? failed_idx - 1 : failed_idx + 1;
  }

  DecompositionPlan out;
  out.sweep_direction = plan.sweep_direction;
  out.min_diameter_direction = plan.min_diameter_direction;
  for (std::size_t i = 0; i < s; ++i) {
    if (i == failed_idx) continue;
    SubArea sub = plan.sub_areas[i];
    if (i == neighbor) {
      std::vector<geom::Point2> pts = sub.polygon.vertices();
      const auto& extra = unswept.vertices();
      pts.insert(pts.end(), extra.begin(), extra.end());
      sub.polygon = geom::ConvexPolygon::from_points(convex_hull(std::move(pts)));
      sub.proportion += plan.sub_areas[failed_idx].proportion;
    }
    out.sub_areas.push_back(std::move(sub));
  }
  return out;
}

}  // namespace decomp
}  // namespace dronesweep
