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

#include <cmath>
#include <vector>

#include "dronesweep/channel.hpp"

using namespace dronesweep;

namespace {

const channel::ChannelConfig kCfg{};  // 2 GHz, 100 dB

double radius_at(double h, const channel::Environment& env) {
  const auto r = channel::coverage_radius(h, env, kCfg);
  return r.has_coverage ? r.radius_m : 0.0;
}

}  // namespace

TEST_CASE("environment presets validate") {
  CHECK_NOTHROW(channel::urban_environment().validate());
  CHECK_NOTHROW(channel::suburban_environment().validate());
  CHECK(channel::urban_environment().a == doctest::Approx(9.61));
  CHECK(channel::suburban_environment().b == doctest::Approx(0.43));
  channel::Environment bad = channel::urban_environment();
  bad.eta_los = 30.0;  // now above eta_nlos
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("line-of-sight probability properties") {
  const auto env = channel::urban_environment();
  // Directly overhead the link is almost surely line-of-sight.
  CHECK(channel::p_los(100.0, 0.0, env) > 0.99);
  // Far away at low altitude it is unlikely.
  CHECK(channel::p_los(10.0, 10000.0, env) < 0.05);
  CHECK_THROWS_AS(channel::p_los(0.0, 10.0, env), std::domain_error);
  CHECK_THROWS_AS(channel::p_los(10.0, -1.0, env), std::domain_error);
}

TEST_CASE("p_los is monotone in altitude at fixed ground distance") {
  for (const auto& env :
       {channel::urban_environment(), channel::suburban_environment()}) {
    for (double r : {100.0, 500.0, 2000.0}) {
      double prev = 0.0;
      for (double h = 10.0; h <= 5000.0; h += 10.0) {
        const double p = channel::p_los(h, r, env);
        CHECK(p >= prev - 1e-12);
        prev = p;
      }
    }
  }
}

TEST_CASE("path loss grows with ground distance") {
  const auto env = channel::suburban_environment();
  double prev = -1.0;
  for (double r = 0.0; r <= 5000.0; r += 50.0) {
    const double loss = channel::path_loss(300.0, r, env, kCfg);
    CHECK(loss > prev);
    prev = loss;
  }
}

TEST_CASE("coverage radius root matches the loss threshold") {
  for (const auto& env :
       {channel::urban_environment(), channel::suburban_environment()}) {
    for (double h : {50.0, 200.0, 600.0, 1000.0}) {
      const auto r = channel::coverage_radius(h, env, kCfg);
      if (!r.has_coverage) continue;
      CHECK(std::abs(channel::path_loss(h, r.radius_m, env, kCfg) -
                     kCfg.loss_threshold_db) < 0.05);
    }
  }
}

TEST_CASE("no coverage when the nadir loss already exceeds the threshold") {
  channel::ChannelConfig strict = kCfg;
  strict.loss_threshold_db = 60.0;
  const auto r =
      channel::coverage_radius(5000.0, channel::urban_environment(), strict);
  CHECK_FALSE(r.has_coverage);
}

TEST_CASE("radius-vs-altitude curve is unimodal for both presets") {
  for (const auto& env :
       {channel::urban_environment(), channel::suburban_environment()}) {
    std::vector<double> rs;
    for (double h = 10.0; h <= 3000.0; h += 10.0) {
      rs.push_back(radius_at(h, env));
    }
    // Strict rises may not reappear after a strict fall (tolerating the
    // 0.01 m bisection granularity).
    bool falling = false;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      const double d = rs[i] - rs[i - 1];
      if (d < -0.05) falling = true;
      if (falling) CHECK(d < 0.05);
    }
  }
}

TEST_CASE("optimal altitude matches a 1 m grid argmax") {
  for (const auto& env :
       {channel::urban_environment(), channel::suburban_environment()}) {
    const auto opt = channel::optimal_altitude(env, kCfg);
    double best_h = 0.0, best_r = -1.0;
    for (double h = 10.0; h <= 10000.0; h += 1.0) {
      const double r = radius_at(h, env);
      if (r > best_r) {
        best_r = r;
        best_h = h;
      }
    }
    CHECK(std::abs(opt.altitude_m - best_h) <= 1.0);
    CHECK(opt.radius_m == doctest::Approx(best_r).epsilon(1e-4));
  }
}

TEST_CASE("coverage radius is stationary at the optimal altitude") {
  for (const auto& env :
       {channel::urban_environment(), channel::suburban_environment()}) {
    const auto opt = channel::optimal_altitude(env, kCfg);
    // Step balances curvature error against the root granularity.
    const double dh = 2.0;
    const double slope =
        (radius_at(opt.altitude_m + dh, env) -
         radius_at(opt.altitude_m - dh, env)) /
        (2.0 * dh);
    CHECK(std::abs(slope) < 1e-3);
  }
}

TEST_CASE("reference optima for the shipped presets") {
  const auto urban = channel::optimal_altitude(channel::urban_environment(), kCfg);
  CHECK(urban.altitude_m == doctest::Approx(646.0).epsilon(0.01));
  CHECK(urban.radius_m == doctest::Approx(706.6).epsilon(0.01));
  const auto sub =
      channel::optimal_altitude(channel::suburban_environment(), kCfg);
  CHECK(sub.altitude_m == doctest::Approx(403.6).epsilon(0.01));
  CHECK(sub.radius_m == doctest::Approx(1089.1).epsilon(0.01));
}

TEST_CASE("optimal altitude reports an empty bracket") {
  channel::ChannelConfig strict = kCfg;
  strict.loss_threshold_db = 50.0;
  CHECK_THROWS_AS(
      channel::optimal_altitude(channel::urban_environment(), strict),
      std::domain_error);
}

TEST_CASE("config validation") {
  channel::ChannelConfig bad;
  bad.carrier_frequency_hz = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = kCfg;
  bad.loss_threshold_db = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
