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
#include <numeric>
#include <random>
#include <vector>

#include "dronesweep/decomp.hpp"

using namespace dronesweep;
using geom::ConvexPolygon;
using geom::Point2;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexPolygon square_10km() {
  return ConvexPolygon({{0, 0}, {10000, 0}, {10000, 10000}, {0, 10000}});
}

ConvexPolygon random_convex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> rad(0.4 * scale, scale);
  const int n = 5 + static_cast<int>(rng() % 8);
  std::vector<double> angles(n);
  for (auto& a : angles) a = ang(rng);
  std::sort(angles.begin(), angles.end());
  std::vector<Point2> pts;
  for (double a : angles) {
    const double r = rad(rng);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  try {
    return ConvexPolygon::from_points(pts);
  } catch (const std::invalid_argument&) {
    return square_10km();
  }
}

std::vector<double> random_proportions(std::mt19937_64& rng, int parts) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> props(parts);
  double sum = 0.0;
  for (auto& p : props) {
    p = u(rng);
    sum += p;
  }
  for (auto& p : props) p /= sum;
  // Absorb the rounding residue so the list sums to 1 exactly.
  props.back() += 1.0 - std::accumulate(props.begin(), props.end(), 0.0);
  return props;
}

}  // namespace

TEST_CASE("input validation") {
  const auto sq = square_10km();
  CHECK_THROWS_AS(decomp::decompose(sq, {}), std::domain_error);
  CHECK_THROWS_AS(decomp::decompose(sq, {0.5, 0.6}), std::domain_error);
  CHECK_THROWS_AS(decomp::decompose(sq, {1.5, -0.5}), std::domain_error);
}

TEST_CASE("square splits into equal x-strips") {
  const auto plan = decomp::decompose(square_10km(), {0.25, 0.25, 0.25, 0.25});
  // The square's minimum width ties at angles 0 and pi/2; the smaller
  // angle wins, so cut lines run vertically.
  CHECK(plan.min_diameter_direction == doctest::Approx(0.0));
  CHECK(plan.sweep_direction == doctest::Approx(kPi / 2.0));
  REQUIRE(plan.sub_areas.size() == 4);
  for (int i = 0; i < 4; ++i) {
    const auto& sub = plan.sub_areas[i];
    CHECK(sub.drone_id == i);
    CHECK(sub.polygon.area() == doctest::Approx(2.5e7).epsilon(1e-9));
    // Strip i spans x in [2500 i, 2500 (i+1)].
    for (const auto& v : sub.polygon.vertices()) {
      CHECK(v.x >= 2500.0 * i - 1e-6);
      CHECK(v.x <= 2500.0 * (i + 1) + 1e-6);
    }
  }
}

TEST_CASE("cut lines are perpendicular to the min-width axis") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto poly = random_convex(rng, 5000.0);
    const auto plan = decomp::decompose(poly, {0.5, 0.5});
    const auto [theta, width] = poly.min_diameter();
    CHECK(plan.min_diameter_direction == doctest::Approx(theta));
    double expect = theta + kPi / 2.0;
    if (expect >= kPi) expect -= kPi;
    CHECK(plan.sweep_direction == doctest::Approx(expect));
    (void)width;
  }
}

TEST_CASE("proportional areas and conservation on random polygons") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto poly = random_convex(rng, 8000.0);
    const int parts = 2 + static_cast<int>(rng() % 5);
    const auto props = random_proportions(rng, parts);
    const auto plan = decomp::decompose(poly, props);
    REQUIRE(plan.sub_areas.size() == static_cast<std::size_t>(parts));
    const double total = poly.area();
    double covered = 0.0;
    for (int i = 0; i < parts; ++i) {
      const double a = plan.sub_areas[i].polygon.area();
      CHECK(std::abs(a - props[i] * total) <= 1e-6 * total);
      covered += a;
    }
    CHECK(std::abs(covered - total) <= 1e-6 * total);
    // Sub-areas are ordered along the slicing normal of the cut lines.
    const geom::Vec2 axis{std::sin(plan.sweep_direction),
                          -std::cos(plan.sweep_direction)};
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& sub : plan.sub_areas) {
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& v : sub.polygon.vertices()) {
        lo = std::min(lo, v.x * axis.dx + v.y * axis.dy);
      }
      CHECK(lo >= prev - 1e-6);
      prev = lo;
    }
  }
}

TEST_CASE("failure hands the unswept remainder to the adjacent drone") {
  const auto plan = decomp::decompose(square_10km(), {0.25, 0.25, 0.25, 0.25});

  // Drone 1's strip spans x in [2500, 5000]. Unswept low part: the
  // neighbor on the low side (drone 0) grows.
  const ConvexPolygon low_part({{2500, 0}, {3500, 0}, {3500, 10000},
                                {2500, 10000}});
  const auto after_low = decomp::reassign_on_failure(plan, 1, low_part);
  REQUIRE(after_low.sub_areas.size() == 3);
  CHECK(after_low.sub_areas[0].drone_id == 0);
  CHECK(after_low.sub_areas[0].proportion == doctest::Approx(0.5));
  CHECK(after_low.sub_areas[0].polygon.area() ==
        doctest::Approx(2.5e7 + 1e7).epsilon(1e-9));
  // The others are untouched.
  CHECK(after_low.sub_areas[1].drone_id == 2);
  CHECK(after_low.sub_areas[1].polygon.area() == doctest::Approx(2.5e7));

  // Unswept high part: drone 2 grows.
  const ConvexPolygon high_part({{4000, 0}, {5000, 0}, {5000, 10000},
                                 {4000, 10000}});
  const auto after_high = decomp::reassign_on_failure(plan, 1, high_part);
  const auto& grown = after_high.sub_areas[1];
  CHECK(grown.drone_id == 2);
  CHECK(grown.proportion == doctest::Approx(0.5));
  CHECK(grown.polygon.area() == doctest::Approx(2.5e7 + 1e7).epsilon(1e-9));
}

TEST_CASE("failure ties and edge drones") {
  const auto plan = decomp::decompose(square_10km(), {0.25, 0.25, 0.25, 0.25});
  // The whole strip unswept: both gaps are zero, lower id wins.
  const auto after = decomp::reassign_on_failure(
      plan, 1, plan.sub_areas[1].polygon);
  CHECK(after.sub_areas[0].drone_id == 0);
  CHECK(after.sub_areas[0].proportion == doctest::Approx(0.5));

  // An edge drone has a single neighbor.
  const auto after0 = decomp::reassign_on_failure(
      plan, 0, plan.sub_areas[0].polygon);
  CHECK(after0.sub_areas[0].drone_id == 1);
  CHECK(after0.sub_areas[0].proportion == doctest::Approx(0.5));
  const auto after3 = decomp::reassign_on_failure(
      plan, 3, plan.sub_areas[3].polygon);
  CHECK(after3.sub_areas.back().drone_id == 2);
  CHECK(after3.sub_areas.back().proportion == doctest::Approx(0.5));

  CHECK_THROWS_AS(decomp::reassign_on_failure(plan, 9, square_10km()),
                  std::invalid_argument);
  const auto solo = decomp::decompose(square_10km(), {1.0});
  CHECK_THROWS_AS(decomp::reassign_on_failure(solo, 0, square_10km()),
                  std::runtime_error);
}
