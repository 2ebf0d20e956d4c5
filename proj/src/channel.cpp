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

#include "dronesweep/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dronesweep {
namespace channel {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Environment::validate() const {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("Environment: a and b must be > 0");
  }
  if (!(eta_los >= 0.0) || !(eta_nlos >= eta_los)) {
    throw std::invalid_argument("Environment: need eta_nlos >= eta_los >= 0");
  }
}

Environment urban_environment() { return {9.61, 0.16, 1.0, 20.0, "urban"}; }

Environment suburban_environment() {
  return {4.88, 0.43, 0.1, 21.0, "suburban"};
}

void ChannelConfig::validate() const {
  if (!(carrier_frequency_hz > 0.0)) {
    throw std::invalid_argument("ChannelConfig: carrier frequency must be > 0");
  }
  if (!(loss_threshold_db > 0.0)) {
    throw std::invalid_argument("ChannelConfig: loss threshold must be > 0");
  }
}

double p_los(double h, double r, const Environment& env) {
  if (!(h > 0.0)) throw std::domain_error("p_los: altitude must be > 0");
  if (r < 0.0) throw std::domain_error("p_los: distance must be >= 0");
  const double phi_deg = (r == 0.0) ? 90.0 : (180.0 / kPi) * std::atan(h / r);
  return 1.0 / (1.0 + env.a * std::exp(-env.b * (phi_deg - env.a)));
}

double path_loss(double h, double r, const Environment& env,
                 const ChannelConfig& cfg) {
  const double slant = std::sqrt(h * h + r * r);
  const double fspl = 20.0 * std::log10(4.0 * kPi * cfg.carrier_frequency_hz *
                                        slant / ChannelConfig::kSpeedOfLight);
  const double p = p_los(h, r, env);
  return fspl + p * env.eta_los + (1.0 - p) * env.eta_nlos;
}

CoverageRadius coverage_radius(double h, const Environment& env,
                               const ChannelConfig& cfg) {
  if (path_loss(h, 0.0, env, cfg) >= cfg.loss_threshold_db) {
    return {0.0, false};
  }
  // Bracket the threshold crossing; the loss grows without bound in r.
  double lo = 0.0;
  double hi = std::max(h, 100.0);
  while (path_loss(h, hi, env, cfg) < cfg.loss_threshold_db) {
    hi *= 2.0;
    if (hi > 1e9) return {hi, true};  // threshold unreachably high
  }
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    if (path_loss(h, mid, env, cfg) < cfg.loss_threshold_db) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), true};
}

OptimalAltitude optimal_altitude(const Environment& env,
                                 const ChannelConfig& cfg, double h_min,
                                 double h_max) {
  auto radius_at = [&](double h) { return coverage_radius(h, env, cfg).radius_m; };
  // Golden-section search; the radius-vs-altitude curve is unimodal.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = h_min, b = h_max;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = radius_at(c);
  double fd = radius_at(d);
  // Ties (e.g. the zero plateau past the coverage cutoff) must shrink
  // from the right so the search can climb back onto the peak.
  while (b - a > 1e-3) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = radius_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = radius_at(d);
    }
  }
  const double h_star = 0.5 * (a + b);
  const auto r = coverage_radius(h_star, env, cfg);
  if (!r.has_coverage || r.radius_m <= 0.0) {
    throw std::domain_error("optimal_altitude: no coverage in bracket");
  }
  return {h_star, r.radius_m};
}

}  // namespace channel
}  // namespace dronesweep
