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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dronesweep/avoid.hpp"

using namespace dronesweep;
using avoid::AvoidanceParams;
using avoid::KinematicState;
using avoid::RelativeState;
using geom::Point2;
using geom::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

RelativeState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-5000.0, 5000.0);
  std::uniform_real_distribution<double> vel(-20.0, 20.0);
  return {{pos(rng), pos(rng)}, {vel(rng), vel(rng)}};
}

}  // namespace

TEST_CASE("degenerate relative velocity is rejected") {
  const RelativeState still{{100.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(avoid::pass_distance(still), std::domain_error);
  CHECK_THROWS_AS(avoid::closest_approach_time(still), std::domain_error);
}

TEST_CASE("pass distance is orthogonal to the relative velocity") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 10000; ++k) {
    const auto rel = random_state(rng);
    if (rel.c.norm_sq() == 0.0) continue;
    const Vec2 d_p = avoid::pass_distance(rel);
    const double scale = std::max(1.0, d_p.norm() * rel.c.norm());
    CHECK(std::abs(d_p.dot(rel.c)) <= 1e-9 * scale);
    // d - d_p is parallel to c.
    const Vec2 along = rel.d - d_p;
    CHECK(std::abs(along.cross(rel.c)) <=
          1e-9 * std::max(1.0, along.norm() * rel.c.norm()));
  }
}

TEST_CASE("closest approach time minimizes the sampled separation") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 10000; ++k) {
    const auto rel = random_state(rng);
    if (rel.c.norm_sq() == 0.0) continue;
    const double tau = avoid::closest_approach_time(rel);
    auto sep = [&](double t) { return (rel.d + rel.c * t).norm(); };
    const double at_tau = sep(tau);
    CHECK(at_tau == doctest::Approx(avoid::pass_distance(rel).norm())
                        .epsilon(1e-9));
    for (double dt : {-100.0, -1.0, -0.01, 0.01, 1.0, 100.0}) {
      CHECK(at_tau <= sep(tau + dt) + 1e-9);
    }
  }
}

TEST_CASE("separating pairs and wide passes need no correction") {
  AvoidanceParams params;
  params.validate();
  // Flying apart: tau < 0.
  const KinematicState a{{0, 0}, {-10, 0}};
  const KinematicState b{{100, 0}, {10, 0}};
  CHECK_FALSE(avoid::plan_avoidance(a, b, params).has_value());
  // Converging but missing by more than d_safe.
  const KinematicState c{{0, 0}, {10, 0}};
  const KinematicState d{{1000, 200}, {-10, 0}};
  CHECK_FALSE(avoid::plan_avoidance(c, d, params).has_value());
}

TEST_CASE("head-on conflict splits symmetrically") {
  AvoidanceParams params;
  const KinematicState a{{0, 0}, {10, 0}};
  const KinematicState b{{1000, 0}, {-10, 0}};
  const auto corr = avoid::plan_avoidance(a, b, params);
  REQUIRE(corr.has_value());
  // Equal speeds: the margin splits evenly, in opposite lateral
  // directions.
  CHECK(corr->u_a.dy == doctest::Approx(-corr->u_b.dy));
  CHECK(std::abs(corr->u_a.dy) > 0.0);
  CHECK(corr->u_a.norm() <= params.max_correction_m + 1e-12);
  CHECK(corr->u_b.norm() <= params.max_correction_m + 1e-12);
}

TEST_CASE("corrections favor the slower drone") {
  AvoidanceParams params;
  params.max_correction_m = 1e9;  // expose the raw split
  const KinematicState fast{{0, 0}, {30, 0}};
  const KinematicState slow{{200, 1}, {-10, 0}};
  const auto corr = avoid::plan_avoidance(fast, slow, params);
  REQUIRE(corr.has_value());
  const double tau = avoid::closest_approach_time(
      {fast.pos - slow.pos, fast.vel - slow.vel});
  // Lateral displacement beyond dead reckoning: margin * other/sum.
  const Vec2 lat_a = corr->u_a - fast.vel * tau;
  const Vec2 lat_b = corr->u_b - slow.vel * tau;
  CHECK(lat_a.norm() == doctest::Approx(params.target_margin_m * 10.0 / 40.0));
  CHECK(lat_b.norm() == doctest::Approx(params.target_margin_m * 30.0 / 40.0));
}

TEST_CASE("identical velocities push radially when too close") {
  AvoidanceParams params;
  const KinematicState a{{0, 0}, {10, 0}};
  const KinematicState b{{30, 0}, {10, 0}};
  const auto corr = avoid::plan_avoidance(a, b, params);
  REQUIRE(corr.has_value());
  // Pushed apart along the separation axis.
  CHECK(corr->u_a.dx < 0.0);
  CHECK(corr->u_b.dx > 0.0);
  // Far enough apart: no correction.
  const KinematicState far{{200, 0}, {10, 0}};
  CHECK_FALSE(avoid::plan_avoidance(a, far, params).has_value());
}

TEST_CASE("randomized two-drone conflict rollouts keep the safe distance") {
  AvoidanceParams params;
  params.validate();
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> offset(-40.0, 40.0);
  std::uniform_real_distribution<double> dist(600.0, 2500.0);
  std::uniform_real_distribution<double> speed_u(5.0, 15.0);
  const double dt = 0.5;

  for (int trial = 0; trial < 1000; ++trial) {
    // Two drones aimed at nearly the same crossing point.
    const Point2 cross{0.0, 0.0};
    const double a1 = ang(rng), a2 = ang(rng);
    KinematicState a{{dist(rng) * std::cos(a1), dist(rng) * std::sin(a1)},
                     {0, 0}};
    KinematicState b{{dist(rng) * std::cos(a2) + offset(rng),
                      dist(rng) * std::sin(a2) + offset(rng)},
                     {0, 0}};
    const double sa = speed_u(rng), sb = speed_u(rng);
    const Vec2 mission_a = (cross - a.pos).normalized() * sa;
    const Vec2 mission_b = (cross - b.pos).normalized() * sb;
    a.vel = mission_a;
    b.vel = mission_b;

    double min_sep = geom::distance(a.pos, b.pos);
    if (min_sep <= params.safe_distance_m) continue;  // born in conflict
    for (int step = 0; step < 1200; ++step) {
      // Mission velocity unless the planner overrides it, as the engine
      // does.
      a.vel = mission_a;
      b.vel = mission_b;
      const auto corr = avoid::plan_avoidance(a, b, params);
      if (corr) {
        if (corr->u_a.norm() > 0.0) a.vel = corr->u_a.normalized() * sa;
        if (corr->u_b.norm() > 0.0) b.vel = corr->u_b.normalized() * sb;
      }
      a.pos = a.pos + a.vel * dt;
      b.pos = b.pos + b.vel * dt;
      min_sep = std::min(min_sep, geom::distance(a.pos, b.pos));
    }
    CHECK(min_sep >= params.safe_distance_m);
  }
}

TEST_CASE("parameter validation") {
  AvoidanceParams params;
  CHECK_NOTHROW(params.validate());
  params.shared_location_radius_m = 30.0;  // 2 r_s >= d_safe
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = AvoidanceParams{};
  params.target_margin_m = 0.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}
