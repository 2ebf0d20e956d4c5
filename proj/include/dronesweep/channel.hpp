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

#ifndef DRONESWEEP_CHANNEL_HPP
#define DRONESWEEP_CHANNEL_HPP

#include <string>

namespace dronesweep {
namespace channel {

// Sigmoid line-of-sight model constants plus the mean excess losses for
// LoS/NLoS links, all environment dependent.
struct Environment {
  double a = 0.0;        // dimensionless
  double b = 0.0;        // dimensionless
  double eta_los = 0.0;  // dB
  double eta_nlos = 0.0; // dB
  std::string name;

  void validate() const;
};

// Constants from Al-Hourani et al., "Optimal LAP Altitude for Maximum
// Coverage".
Environment urban_environment();
Environment suburban_environment();

struct ChannelConfig {
  double carrier_frequency_hz = 2.0e9;
  double loss_threshold_db = 100.0;
  static constexpr double kSpeedOfLight = 2.998e8;  // m/s

  void validate() const;
};

// Probability of a line-of-sight link at altitude h and ground distance r.
// r = 0 is treated as a 90 degree elevation angle.
double p_los(double h, double r, const Environment& env);

// Mean air-to-ground path loss in dB: free-space term plus the
// probability-weighted LoS/NLoS excess losses.
double path_loss(double h, double r, const Environment& env,
                 const ChannelConfig& cfg);

struct CoverageRadius {
  double radius_m = 0.0;
  bool has_coverage = false;
};

// Ground radius at which the path loss reaches the threshold, found by
// bisection to 0.01 m. Monotonicity of the loss in r makes the root
// unique. No coverage when even the nadir loss exceeds the threshold.
CoverageRadius coverage_radius(double h, const Environment& env,
                               const ChannelConfig& cfg);

struct OptimalAltitude {
  double altitude_m = 0.0;
  double radius_m = 0.0;
};

// Altitude maximizing the coverage radius over [h_min, h_max], by
// golden-section search to 0.1 m. Throws std::domain_error when no
// altitude in the bracket yields coverage.
OptimalAltitude optimal_altitude(const Environment& env,
                                 const ChannelConfig& cfg,
                                 double h_min = 10.0, double h_max = 10000.0);

}  // namespace channel
}  // namespace dronesweep

#endif  // DRONESWEEP_CHANNEL_HPP
