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

#ifndef DRONESWEEP_CONFIG_HPP
#define DRONESWEEP_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dronesweep/engine.hpp"
#include "dronesweep/geom.hpp"

namespace dronesweep {
namespace config {

// Flat key=value scenario description. '#' starts a comment; unknown
// keys are rejected. Units are suffixed in the key names.
struct ConfigFile {
  std::string area_file;
  int n_drones = 5;
  int n_clusters = 2;
  double r_c_m = 250.0;
  double r_d_m = 500.0;
  double lambda_c = 0.02;
  double lambda_nc = 3e-6;
  double eps_th = 10.0;
  double v_mps = 10.0;
  double t_s_s = 0.5;
  double d_safe_m = 50.0;
  double r_s_m = 10.0;
  double margin_m = 100.0;
  double u_max_m = 200.0;
  std::string algorithm = "sweep_search";
  double duration_s = 4500.0;
  std::uint64_t seed = 1;
  int runs = 1;

  // Optional keys.
  double sweep_overlap = 0.0;
  std::optional<int> failure_drone;
  std::optional<double> failure_time_s;
  bool double_count_served = false;
  double shared_position_noise_m = 0.0;

  static ConfigFile parse(std::istream& in);
  static ConfigFile load(const std::string& path);

  // Emits a document that parses back to an identical ConfigFile.
  void echo(std::ostream& out) const;

  // Builds the Scenario; loads the area polygon from area_file.
  engine::Scenario to_scenario() const;
  engine::Scenario to_scenario(geom::ConvexPolygon area) const;
};

// Polygon text format: one "x y" vertex per line, counter-clockwise;
// blank lines and '#' comments ignored. Throws std::runtime_error with a
// line-numbered message on malformed input.
geom::ConvexPolygon load_polygon(std::istream& in,
                                 const std::string& name = "<polygon>");
geom::ConvexPolygon load_polygon_file(const std::string& path);

}  // namespace config
}  // namespace dronesweep

#endif  // DRONESWEEP_CONFIG_HPP
