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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dronesweep/channel.hpp"
#include "dronesweep/config.hpp"
#include "dronesweep/decomp.hpp"
#include "dronesweep/engine.hpp"
#include "dronesweep/svg.hpp"
#include "dronesweep/sweep_path.hpp"

namespace {

using namespace dronesweep;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

// Errors raised while loading or validating inputs; mapped to exit 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<std::ofstream> open_out(const std::string& path,
                                        std::ostream*& out) {
  if (path.empty() || path == "-") {
    out = &std::cout;
    return nullptr;
  }
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw std::runtime_error("cannot open output file: " + path);
  out = f.get();
  return f;
}

std::vector<double> parse_proportions(const std::string& text, int count) {
  std::vector<double> props;
  if (!text.empty()) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        props.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ValidationError("bad proportion value: " + item);
      }
    }
  } else if (count > 0) {
    props.assign(count, 1.0 / count);
  } else {
    throw ValidationError("give either --proportions or --count");
  }
  return props;
}

int cmd_decompose(const std::string& polygon_path, const std::string& props_text,
                  int count, const std::string& out_path,
                  const std::string& svg_path) {
  geom::ConvexPolygon poly({{0, 0}, {1, 0}, {0, 1}});
  std::vector<double> props;
  decomp::DecompositionPlan plan;
  try {
    poly = config::load_polygon_file(polygon_path);
    props = parse_proportions(props_text, count);
    plan = decomp::decompose(poly, props);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::ostream* out = nullptr;
  const auto file = open_out(out_path, out);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "# sweep_direction_rad,%.12f\n",
                plan.sweep_direction);
  *out << buf;
  std::snprintf(buf, sizeof(buf), "# min_diameter_direction_rad,%.12f\n",
                plan.min_diameter_direction);
  *out << buf;
  *out << "drone_id,proportion,vertex_index,x,y\n";
  for (const auto& sub : plan.sub_areas) {
    const auto& verts = sub.polygon.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%d,%.12f,%zu,%.6f,%.6f\n",
                    sub.drone_id, sub.proportion, i, verts[i].x, verts[i].y);
      *out << buf;
    }
  }

  if (!svg_path.empty()) {
    geom::Point2 lo, hi;
    poly.bounding_box(lo, hi);
    svg::Document doc(lo, hi);
    doc.polygon(poly.vertices(), "black");
    for (const auto& sub : plan.sub_areas) {
      doc.polygon(sub.polygon.vertices(), "blue");
      const auto path = sweep_path::generate_zigzag(
          sub.polygon, plan.sweep_direction, 0.05 * poly.diameter(0.0));
      doc.polyline(path.waypoints, "red");
    }
    std::ofstream svg_out(svg_path);
    if (!svg_out) {
      std::cerr << "error: cannot open " << svg_path << "\n";
      return kExitRuntime;
    }
    doc.write(svg_out);
  }
  return kExitOk;
}

int cmd_channel(const std::string& env_name, double f_c, double l_th,
                double h_min, double h_max, double h_step,
                const std::string& out_path) {
  channel::Environment env;
  channel::ChannelConfig cfg;
  try {
    if (env_name == "urban") {
      env = channel::urban_environment();
    } else if (env_name == "suburban") {
      env = channel::suburban_environment();
    } else {
      throw ValidationError("unknown environment: " + env_name);
    }
    cfg.carrier_frequency_hz = f_c;
    cfg.loss_threshold_db = l_th;
    cfg.validate();
    if (!(h_min > 0.0) || !(h_max > h_min) || !(h_step > 0.0)) {
      throw ValidationError("need 0 < h-min < h-max and h-step > 0");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::ostream* out = nullptr;
  const auto file = open_out(out_path, out);
  *out << "h_m,r_d_m\n";
  char buf[96];
  for (double h = h_min; h <= h_max + 1e-9; h += h_step) {
    const auto r = channel::coverage_radius(h, env, cfg);
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f\n", h,
                  r.has_coverage ? r.radius_m : 0.0);
    *out << buf;
  }
  try {
    const auto opt = channel::optimal_altitude(env, cfg, h_min, h_max);
    std::snprintf(buf, sizeof(buf), "# h_star_m,%.3f\n# r_star_m,%.3f\n",
                  opt.altitude_m, opt.radius_m);
    *out << buf;
  } catch (const std::domain_error&) {
    *out << "# no coverage in altitude bracket\n";
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& echo_path) {
  config::ConfigFile cfg;
  std::optional<engine::Scenario> scenario;
  try {
    cfg = config::ConfigFile::load(config_path);
    scenario = cfg.to_scenario();
    scenario->validate();
    const auto diags = users::validate_scenario(
        scenario->population, scenario->n_drones,
        scenario->params.coverage_radius_m);
    for (const auto& d : diags) {
      const bool err = d.severity == users::Diagnostic::Severity::Error;
      std::cerr << (err ? "error: " : "warning: ") << d.message << "\n";
      if (err) return kExitValidation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  if (!echo_path.empty()) {
    std::ofstream echo_out(echo_path);
    if (!echo_out) {
      std::cerr << "error: cannot open " << echo_path << "\n";
      return kExitRuntime;
    }
    cfg.echo(echo_out);
  }

  const auto ens = engine::ensemble(*scenario, cfg.runs, cfg.seed);
  std::ostream* out = nullptr;
  const auto file = open_out(out_path, out);
  engine::write_csv(*out, scenario->algorithm, cfg.seed, ens);
  return kExitOk;
}

int cmd_compare(const std::string& config_path, const std::string& out_path,
                const std::string& aggregate_path) {
  config::ConfigFile cfg;
  std::optional<engine::Scenario> scenario;
  try {
    cfg = config::ConfigFile::load(config_path);
    scenario = cfg.to_scenario();
    scenario->validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const engine::Algorithm algos[] = {engine::Algorithm::SweepSearch,
                                     engine::Algorithm::RandomSearch,
                                     engine::Algorithm::AttractiveSearch};
  std::ostream* out = nullptr;
  const auto file = open_out(out_path, out);
  engine::write_csv_header(*out);

  std::vector<engine::EnsembleResult> results;
  for (const auto algo : algos) {
    engine::Scenario s = *scenario;
    s.algorithm = algo;
    // Identical base seed per algorithm: paired populations per run.
    auto ens = engine::ensemble(s, cfg.runs, cfg.seed);
    for (std::size_t i = 0; i < ens.runs.size(); ++i) {
      engine::write_csv_rows(*out, algo, static_cast<int>(i),
                             cfg.seed + static_cast<std::uint64_t>(i),
                             ens.runs[i]);
    }
    results.push_back(std::move(ens));
  }

  if (!aggregate_path.empty()) {
    std::ofstream agg(aggregate_path);
    if (!agg) {
      std::cerr << "error: cannot open " << aggregate_path << "\n";
      return kExitRuntime;
    }
    agg << "algorithm,t_s,mean_served\n";
    char buf[96];
    for (std::size_t a = 0; a < results.size(); ++a) {
      const auto& ens = results[a];
      for (std::size_t k = 0; k < ens.t_s.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%s,%.3f,%.6f\n",
                      engine::algorithm_name(algos[a]).c_str(), ens.t_s[k],
                      ens.mean_served[k]);
        agg << buf;
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-drone base station sweep coverage simulator"};
  app.require_subcommand(1);

  std::string polygon_path, props_text, out_path, svg_path;
  int count = 0;
  auto* dec = app.add_subcommand("decompose",
                                 "Split an area into proportional sub-areas");
  dec->add_option("--polygon", polygon_path, "Polygon file, one \"x y\" per line")
      ->required();
  dec->add_option("--proportions", props_text, "Comma-separated, sum to 1");
  dec->add_option("--count", count, "Uniform split into this many parts");
  dec->add_option("--out", out_path, "Output CSV (default stdout)");
  dec->add_option("--svg", svg_path, "Optional SVG rendering");

  std::string env_name = "urban";
  double f_c = 2.0e9, l_th = 100.0, h_min = 10.0, h_max = 10000.0,
         h_step = 10.0;
  std::string ch_out;
  auto* ch = app.add_subcommand("channel",
                                "Coverage radius vs altitude for a preset "
                                "propagation environment");
  ch->add_option("--env", env_name, "urban or suburban");
  ch->add_option("--f-c", f_c, "Carrier frequency, Hz");
  ch->add_option("--l-th", l_th, "Path loss threshold, dB");
  ch->add_option("--h-min", h_min, "Lowest altitude, m");
  ch->add_option("--h-max", h_max, "Highest altitude, m");
  ch->add_option("--h-step", h_step, "Altitude grid step, m");
  ch->add_option("--out", ch_out, "Output CSV (default stdout)");

  std::string sim_config, sim_out, sim_echo;
  auto* sim = app.add_subcommand("simulate",
                                 "Run one algorithm's ensemble from a config");
  sim->add_option("--config", sim_config, "Config file")->required();
  sim->add_option("--out", sim_out, "Time series CSV (default stdout)");
  sim->add_option("--echo-config", sim_echo, "Write the parsed config back");

  std::string cmp_config, cmp_out, cmp_agg;
  auto* cmp = app.add_subcommand(
      "compare", "Run all three algorithms on paired populations");
  cmp->add_option("--config", cmp_config, "Config file")->required();
  cmp->add_option("--out", cmp_out, "Combined time series CSV (default stdout)");
  cmp->add_option("--aggregate", cmp_agg, "Mean curve CSV per algorithm");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) {
      return cmd_decompose(polygon_path, props_text, count, out_path, svg_path);
    }
    if (ch->parsed()) {
      return cmd_channel(env_name, f_c, l_th, h_min, h_max, h_step, ch_out);
    }
    if (sim->parsed()) return cmd_simulate(sim_config, sim_out, sim_echo);
    if (cmp->parsed()) return cmd_compare(cmp_config, cmp_out, cmp_agg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
