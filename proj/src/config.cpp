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

#include "dronesweep/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dronesweep {
namespace config {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad number for " + key + ": " + v);
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for " + key + ": " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::runtime_error("config: bad boolean for " + key + ": " + v);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
  ConfigFile cfg;
  std::map<std::string, std::function<void(const std::string&)>> setters;
  auto dbl = [&](const std::string& key, double& field) {
    setters[key] = [&field, key](const std::string& v) {
      field = parse_double(key, v);
    };
  };
  setters["area_file"] = [&](const std::string& v) { cfg.area_file = v; };
  setters["n_drones"] = [&](const std::string& v) {
    cfg.n_drones = static_cast<int>(parse_long("n_drones", v));
  };
  setters["n_clusters"] = [&](const std::string& v) {
    cfg.n_clusters = static_cast<int>(parse_long("n_clusters", v));
  };
  dbl("r_c_m", cfg.r_c_m);
  dbl("r_d_m", cfg.r_d_m);
  dbl("lambda_c", cfg.lambda_c);
  dbl("lambda_nc", cfg.lambda_nc);
  dbl("eps_th", cfg.eps_th);
  dbl("v_mps", cfg.v_mps);
  dbl("t_s_s", cfg.t_s_s);
  dbl("d_safe_m", cfg.d_safe_m);
  dbl("r_s_m", cfg.r_s_m);
  dbl("margin_m", cfg.margin_m);
  dbl("u_max_m", cfg.u_max_m);
  setters["algorithm"] = [&](const std::string& v) { cfg.algorithm = v; };
  dbl("duration_s", cfg.duration_s);
  setters["seed"] = [&](const std::string& v) {
    cfg.seed = static_cast<std::uint64_t>(parse_long("seed", v));
  };
  setters["runs"] = [&](const std::string& v) {
    cfg.runs = static_cast<int>(parse_long("runs", v));
  };
  dbl("sweep_overlap", cfg.sweep_overlap);
  setters["failure_drone"] = [&](const std::string& v) {
    cfg.failure_drone = static_cast<int>(parse_long("failure_drone", v));
  };
  setters["failure_time_s"] = [&](const std::string& v) {
    cfg.failure_time_s = parse_double("failure_time_s", v);
  };
  setters["double_count_served"] = [&](const std::string& v) {
    cfg.double_count_served = parse_bool("double_count_served", v);
  };
  dbl("shared_position_noise_m", cfg.shared_position_noise_m);

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: line " + std::to_string(line_no) +
                               ": expected key=value, got: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::runtime_error("config: line " + std::to_string(line_no) +
                               ": unknown key: " + key);
    }
    it->second(value);
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  return parse(in);
}

void ConfigFile::echo(std::ostream& out) const {
  out << "area_file = " << area_file << "\n";
  out << "n_drones = " << n_drones << "\n";
  out << "n_clusters = " << n_clusters << "\n";
  out << "r_c_m = " << fmt_double(r_c_m) << "\n";
  out << "r_d_m = " << fmt_double(r_d_m) << "\n";
  out << "lambda_c = " << fmt_double(lambda_c) << "\n";
  out << "lambda_nc = " << fmt_double(lambda_nc) << "\n";
  out << "eps_th = " << fmt_double(eps_th) << "\n";
  out << "v_mps = " << fmt_double(v_mps) << "\n";
  out << "t_s_s = " << fmt_double(t_s_s) << "\n";
  out << "d_safe_m = " << fmt_double(d_safe_m) << "\n";
  out << "r_s_m = " << fmt_double(r_s_m) << "\n";
  out << "margin_m = " << fmt_double(margin_m) << "\n";
  out << "u_max_m = " << fmt_double(u_max_m) << "\n";
  out << "algorithm = " << algorithm << "\n";
  out << "duration_s = " << fmt_double(duration_s) << "\n";
  out << "seed = " << seed << "\n";
  out << "runs = " << runs << "\n";
  out << "sweep_overlap = " << fmt_double(sweep_overlap) << "\n";
  if (failure_drone) out << "failure_drone = " << *failure_drone << "\n";
  if (failure_time_s) {
    out << "failure_time_s = " << fmt_double(*failure_time_s) << "\n";
  }
  out << "double_count_served = " << (double_count_served ? "true" : "false")
      << "\n";
  out << "shared_position_noise_m = " << fmt_double(shared_position_noise_m)
      << "\n";
}

engine::Scenario ConfigFile::to_scenario() const {
  return to_scenario(load_polygon_file(area_file));
}

engine::Scenario ConfigFile::to_scenario(geom::ConvexPolygon area) const {
  users::PopulationSpec pop{n_clusters, r_c_m, lambda_c, lambda_nc, area};
  engine::Scenario s{std::move(area), std::move(pop)};
  s.n_drones = n_drones;
  s.params = {eps_th, t_s_s, v_mps, r_d_m};
  s.avoidance = {r_s_m, d_safe_m, margin_m, u_max_m};
  s.algorithm = engine::algorithm_from_name(algorithm);
  s.duration_s = duration_s;
  s.seed = seed;
  if (failure_drone.has_value() != failure_time_s.has_value()) {
    throw std::runtime_error(
        "config: failure_drone and failure_time_s must be given together");
  }
  if (failure_drone) {
    s.failure = engine::FailureEvent{*failure_drone, *failure_time_s};
  }
  s.sweep_overlap = sweep_overlap;
  s.double_count_served = double_count_served;
  s.shared_position_noise_m = shared_position_noise_m;
  return s;
}

geom::ConvexPolygon load_polygon(std::istream& in, const std::string& name) {
  std::vector<geom::Point2> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x >> y)) {
      throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                               ": expected \"x y\", got: " + line);
    }
    std::string rest;
    if (ls >> rest) {
      throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                               ": trailing content: " + rest);
    }
    pts.push_back({x, y});
  }
  if (pts.size() < 3) {
    throw std::runtime_error(name + ": need at least 3 vertices, got " +
                             std::to_string(pts.size()));
  }
  try {
    return geom::ConvexPolygon::from_points(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

geom::ConvexPolygon load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polygon file: " + path);
  return load_polygon(in, path);
}

}  // namespace config
}  // namespace dronesweep
