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

#include "dronesweep/avoid.hpp"

#include <cmath>

namespace dronesweep {
namespace avoid {

namespace {

geom::Vec2 clamp_norm(const geom::Vec2& v, double limit) {
  const double n = v.norm();
  if (n <= limit || n == 0.0) return v;
  return v * (limit / n);
}

}  // namespace

geom::Vec2 pass_distance(const RelativeState& rel) {
  const double c_sq = rel.c.norm_sq();
  if (c_sq == 0.0) {
    throw std::domain_error("pass_distance: zero relative velocity");
  }
  const geom::Vec2 c_hat = rel.c * (1.0 / std::sqrt(c_sq));
  return rel.d - c_hat * rel.d.dot(c_hat);
}

double closest_approach_time(const RelativeState& rel) {
  const double c_sq = rel.c.norm_sq();
  if (c_sq == 0.0) {
    throw std::domain_error("closest_approach_time: zero relative velocity");
  }
  return -rel.d.dot(rel.c) / c_sq;
}

std::optional<Correction> plan_avoidance(const KinematicState& a,
                                         const KinematicState& b,
                                         const AvoidanceParams& params) {
  const RelativeState rel{a.pos - b.pos, a.vel - b.vel};
  const double speed_a = a.vel.norm();
  const double speed_b = b.vel.norm();

  if (rel.c.norm_sq() == 0.0) {
    // Identical velocities: separation is constant. Push radially apart
    // when already inside the safe distance.
    const double sep = rel.d.norm();
    if (sep > params.safe_distance_m) return std::nullopt;
    geom::Vec2 dir;
    if (sep > 0.0) {
      dir = rel.d * (1.0 / sep);
    } else if (speed_a > 0.0) {
      dir = a.vel.normalized().left_perp();
    } else if (speed_b > 0.0) {
      dir = b.vel.normalized().left_perp();
    } else {
      dir = {1.0, 0.0};
    }
    const double half = 0.5 * params.target_margin_m;
    return Correction{clamp_norm(dir * half, params.max_correction_m),
                      clamp_norm(-dir * half, params.max_correction_m)};
  }

  const double tau = closest_approach_time(rel);
  if (tau <= 0.0) return std::nullopt;

  const geom::Vec2 d_p = pass_distance(rel);
  const double pass = d_p.norm();
  if (pass - params.safe_distance_m > 0.0) return std::nullopt;

  const double speed_sum = speed_a + speed_b;
  if (speed_sum == 0.0) return std::nullopt;  // unreachable with ||c|| > 0

  geom::Vec2 d_p_hat;
  if (pass > 0.0) {
    d_p_hat = d_p * (1.0 / pass);
  } else {
    // Exact head-on: the pass direction is undefined; deterministically
    // split to A's left of the relative velocity.
    d_p_hat = rel.c.normalized().left_perp();
  }

  geom::Vec2 d_vsa = d_p_hat * (params.target_margin_m * speed_b / speed_sum);
  geom::Vec2 d_vsb = -d_p_hat * (params.target_margin_m * speed_a / speed_sum);

  // Widening the predicted pass is not enough when the pair is already
  // nearly too close: for slow, near-parallel convergence the pass push
  // is almost antiparallel to the drones' own velocities and constant
  // speed execution cancels it. Blend in a radial push that grows as the
  // current separation falls toward the safe distance.
  const double sep_now = rel.d.norm();
  const double near = params.safe_distance_m + params.target_margin_m;
  if (sep_now > 0.0 && sep_now < near) {
    const geom::Vec2 d_hat = rel.d * (1.0 / sep_now);
    const double push = params.target_margin_m * (near - sep_now) / near;
    // The push must bend the heading, not just nudge the target: for a
    // distant closest approach the carrier term v*tau dwarfs a fixed
    // offset, so scale the push up to the carrier's own magnitude.
    const double scale_a =
        std::max(1.0, (a.vel * tau).norm() / params.target_margin_m);
    const double scale_b =
        std::max(1.0, (b.vel * tau).norm() / params.target_margin_m);
    d_vsa = d_vsa + d_hat * (push * scale_a * speed_b / speed_sum);
    d_vsb = d_vsb - d_hat * (push * scale_b * speed_a / speed_sum);
  }

  Correction corr;
  corr.u_a = clamp_norm(a.vel * tau + d_vsa, params.max_correction_m);
  corr.u_b = clamp_norm(b.vel * tau + d_vsb, params.max_correction_m);
  return corr;
}

}  // namespace avoid
}  // namespace dronesweep
