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

#include "dronesweep/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "dronesweep/decomp.hpp"
#include "dronesweep/sweep_path.hpp"

namespace dronesweep {
namespace engine {

namespace {

// Conflicts whose closest approach lies further out than this are
// ignored until they become imminent.
constexpr double kAvoidanceHorizonS = 60.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

geom::Point2 uniform_in_polygon(const geom::ConvexPolygon& poly,
                                std::mt19937_64& rng) {
  geom::Point2 lo, hi;
  poly.bounding_box(lo, hi);
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  for (;;) {
    const geom::Point2 p{ux(rng), uy(rng)};
    if (poly.contains(p)) return p;
  }
}

// Spawn points for the baseline searchers: uniform over the area with a
// pairwise separation target that relaxes when the area is too small.
std::vector<geom::Point2> spawn_positions(const geom::ConvexPolygon& area,
                                          int n, double coverage_radius,
                                          double safe_distance,
                                          std::mt19937_64& rng) {
  std::vector<geom::Point2> out;
  const double targets[] = {2.0 * coverage_radius, safe_distance, 0.0};
  for (double target : targets) {
    out.clear();
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const geom::Point2 p = uniform_in_polygon(area, rng);
        bool clear = true;
        for (const auto& q : out) {
          if (geom::distance(p, q) < target) {
            clear = false;
            break;
          }
        }
        if (clear) {
          out.push_back(p);
          placed = true;
          break;
        }
      }
      ok = placed;
    }
    if (ok) return out;
  }
  throw std::runtime_error("spawn_positions: could not place drones");
}

struct CandidateKey {
  double x, y;
  long served;
  bool operator==(const CandidateKey&) const = default;
};

// Grid over trajectory sample points for fast point-to-polyline queries.
class TrajectoryIndex {
 public:
  TrajectoryIndex(const std::vector<std::vector<geom::Point2>>& tracks,
                  double cell_m)
      : tracks_(tracks), cell_m_(cell_m) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x, max_x = -min_x, max_y = -min_x;
    for (const auto& tr : tracks) {
      for (const auto& p : tr) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
      }
    }
    if (!(max_x >= min_x)) {
      min_x = min_y = 0.0;
      max_x = max_y = 0.0;
    }
    min_x_ = min_x;
    min_y_ = min_y;
    nx_ = static_cast<std::size_t>((max_x - min_x) / cell_m_) + 1;
    ny_ = static_cast<std::size_t>((max_y - min_y) / cell_m_) + 1;
    cells_.resize(nx_ * ny_);
    for (std::size_t d = 0; d < tracks.size(); ++d) {
      const auto& tr = tracks[d];
      for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
        // Register the segment at both endpoint cells.
        const std::size_t ca = cell_of(tr[i]);
        cells_[ca].push_back({d, i});
        const std::size_t cb = cell_of(tr[i + 1]);
        if (cb != ca) cells_[cb].push_back({d, i});
      }
    }
  }

  // True when the point is within `radius` of any trajectory segment.
  // `pad` must bound the length of the longest segment.
  bool near(const geom::Point2& p, double radius, double pad) const {
    const double reach = radius + pad;
    const std::size_t ix0 = idx((p.x - reach - min_x_) / cell_m_, nx_);
    const std::size_t ix1 = idx((p.x + reach - min_x_) / cell_m_, nx_);
    const std::size_t iy0 = idx((p.y - reach - min_y_) / cell_m_, ny_);
    const std::size_t iy1 = idx((p.y + reach - min_y_) / cell_m_, ny_);
    for (std::size_t iy = iy0; iy <= iy1; ++iy) {
      for (std::size_t ix = ix0; ix <= ix1; ++ix) {
        for (const auto& [d, i] : cells_[iy * nx_ + ix]) {
          const auto& tr = tracks_[d];
          if (geom::distance_to_segment(p, tr[i], tr[i + 1]) <= radius) {
            return true;
          }
        }
      }
    }
    return false;
  }

 private:
  static std::size_t idx(double v, std::size_t n) {
    if (v < 0.0) return 0;
    const std::size_t i = static_cast<std::size_t>(v);
    return i >= n ? n - 1 : i;
  }
  std::size_t cell_of(const geom::Point2& p) const {
    return idx((p.y - min_y_) / cell_m_, ny_) * nx_ +
           idx((p.x - min_x_) / cell_m_, nx_);
  }

  const std::vector<std::vector<geom::Point2>>& tracks_;
  double cell_m_;
  double min_x_ = 0.0, min_y_ = 0.0;
  std::size_t nx_ = 1, ny_ = 1;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cells_;
};

double swept_fraction_mc(const geom::ConvexPolygon& area,
                         const std::vector<std::vector<geom::Point2>>& tracks,
                         double coverage_radius, std::uint64_t seed,
                         int n_points) {
  double max_seg = 0.0;
  for (const auto& tr : tracks) {
    for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
      max_seg = std::max(max_seg, geom::distance(tr[i], tr[i + 1]));
    }
  }
  TrajectoryIndex index(tracks, std::max(coverage_radius, 1.0));
  std::mt19937_64 rng(seed);
  const double tol = coverage_radius + 1e-6;
  int hits = 0;
  for (int i = 0; i < n_points; ++i) {
    const geom::Point2 p = uniform_in_polygon(area, rng);
    if (index.near(p, tol, max_seg)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n_points);
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::SweepSearch:
      return "sweep_search";
    case Algorithm::RandomSearch:
      return "random_search";
    case Algorithm::AttractiveSearch:
      return "attractive_search";
  }
  throw std::invalid_argument("algorithm_name: bad value");
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "sweep_search") return Algorithm::SweepSearch;
  if (name == "random_search") return Algorithm::RandomSearch;
  if (name == "attractive_search") return Algorithm::AttractiveSearch;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

void Scenario::validate() const {
  if (n_drones < 1) {
    throw std::invalid_argument("Scenario: n_drones must be >= 1");
  }
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("Scenario: duration must be > 0");
  }
  params.validate();
  avoidance.validate();
  population.validate();
  if (failure && (failure->drone_id < 0 || failure->drone_id >= n_drones)) {
    throw std::invalid_argument("Scenario: failure drone id out of range");
  }
  if (!(sweep_overlap >= 0.0 && sweep_overlap < 1.0)) {
    throw std::invalid_argument("Scenario: sweep overlap must be in [0,1)");
  }
  if (shared_position_noise_m < 0.0) {
    throw std::invalid_argument("Scenario: position noise must be >= 0");
  }
}

long served_users_double_count(const std::vector<sim::Candidate>& candidates,
                               int n_drones) {
  long total = 0;
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(0, n_drones)),
                            candidates.size());
  for (std::size_t c = 0; c < n; ++c) total += candidates[c].served;
  return total;
}

long served_users(const std::vector<sim::Candidate>& candidates, int n_drones,
                  const users::UserPopulation& population,
                  double coverage_radius) {
  std::vector<char> seen(population.size(), 0);
  std::vector<std::uint32_t> idx;
  long total = 0;
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(0, n_drones)),
                            candidates.size());
  for (std::size_t c = 0; c < n; ++c) {
    idx.clear();
    population.collect_in_disk({candidates[c].location, coverage_radius}, idx);
    for (std::uint32_t i : idx) {
      if (!seen[i]) {
        seen[i] = 1;
        ++total;
      }
    }
  }
  return total;
}

RunResult run(const Scenario& scenario) {
  scenario.validate();
  const double dt = scenario.params.sample_time_s;
  const double speed = scenario.params.speed_mps;
  const double r_d = scenario.params.coverage_radius_m;
  const long steps =
      static_cast<long>(std::ceil(scenario.duration_s / dt - 1e-9));

  users::PopulationSpec pop_spec = scenario.population;
  const users::UserPopulation pop =
      users::UserPopulation::generate(pop_spec, substream(scenario.seed, 0));

  sim::Blackboard board;
  for (const auto& d : scenario.surviving_stations) board.add_detected(d);

  const int n = scenario.n_drones;
  std::vector<sim::DroneState> drones(n);
  std::vector<sim::CaptureSite> sites;
  std::vector<std::unique_ptr<sim::Controller>> controllers(n);
  std::optional<decomp::DecompositionPlan> plan;

  if (scenario.algorithm == Algorithm::SweepSearch) {
    sites = sim::capture_sites(pop, scenario.params);
    plan = decomp::decompose(scenario.area,
                             std::vector<double>(n, 1.0 / n));
    for (int i = 0; i < n; ++i) {
      const auto& sub = plan->sub_areas[i];
      auto path = sweep_path::generate_zigzag(sub.polygon,
                                              plan->sweep_direction, r_d,
                                              scenario.sweep_overlap);
      drones[i].id = i;
      drones[i].position = path.waypoints[0];
      controllers[i] = std::make_unique<sim::SweepSearchController>(
          sub.polygon, std::move(path), scenario.params, &scenario.area,
          &sites);
    }
  } else {
    std::mt19937_64 place_rng(substream(scenario.seed, 1));
    const auto spawns =
        spawn_positions(scenario.area, n, r_d,
                        scenario.avoidance.safe_distance_m, place_rng);
    for (int i = 0; i < n; ++i) {
      drones[i].id = i;
      drones[i].position = spawns[i];
      drones[i].mode = sim::Mode::Sweep;
      const std::uint64_t cseed = substream(scenario.seed, 100 + i);
      if (scenario.algorithm == Algorithm::RandomSearch) {
        controllers[i] = std::make_unique<sim::RandomSearchController>(
            scenario.area, scenario.params, cseed, i);
      } else {
        controllers[i] = std::make_unique<sim::AttractiveSearchController>(
            scenario.area, scenario.params, cseed, i);
      }
    }
  }

  RunResult result;
  result.series.reserve(steps);
  std::vector<std::vector<geom::Point2>> tracks(n);
  for (int i = 0; i < n; ++i) tracks[i].push_back(drones[i].position);

  double min_sep_run = std::numeric_limits<double>::infinity();
  std::mt19937_64 noise_rng(substream(scenario.seed, 3));
  bool failure_done = false;
  long served_cached = 0;
  std::uint64_t board_version_cached = board.version() + 1;  // force first
  std::vector<CandidateKey> baseline_cached;
  std::vector<CandidateKey> pool_cached;
  std::vector<sim::Candidate> bests_cached;
  std::vector<sim::Candidate> candidates;
  long best_so_far = 0;
  std::vector<geom::Point2> peers;
  std::vector<char> overridden(n, 0);

  for (long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    if (scenario.failure && !failure_done &&
        static_cast<double>(k - 1) * dt >= scenario.failure->time_s) {
      failure_done = true;
      const int f = scenario.failure->drone_id;
      drones[f].mode = sim::Mode::Failed;
      drones[f].velocity = {0.0, 0.0};
      if (plan) {
        auto* fc = dynamic_cast<sim::SweepSearchController*>(controllers[f].get());
        const auto remaining = fc->remaining_region();
        if (remaining && n > 1) {
          const auto new_plan =
              decomp::reassign_on_failure(*plan, f, *remaining);
          for (const auto& sub : new_plan.sub_areas) {
            const auto& old = plan->sub_areas[sub.drone_id];
            if (sub.proportion > old.proportion + 1e-12) {
              auto* takeover = dynamic_cast<sim::SweepSearchController*>(
                  controllers[sub.drone_id].get());
              takeover->queue_extra_area(*remaining);
              if (drones[sub.drone_id].mode == sim::Mode::Done) {
                drones[sub.drone_id].mode = sim::Mode::Sweep;
              }
              break;
            }
          }
          plan = new_plan;
        }
      }
    }

    // Controllers decide velocities from the pre-step snapshot.
    std::vector<geom::Point2> snapshot(n);
    for (int i = 0; i < n; ++i) snapshot[i] = drones[i].position;
    for (int i = 0; i < n; ++i) {
      if (drones[i].mode == sim::Mode::Failed) continue;
      peers.clear();
      for (int j = 0; j < n; ++j) {
        if (j != i && drones[j].mode != sim::Mode::Failed) {
          peers.push_back(snapshot[j]);
        }
      }
      controllers[i]->step(drones[i], board, pop, peers, dt);
    }

    // Collision avoidance, nearest conflict first, one correction per
    // drone per step.
    std::fill(overridden.begin(), overridden.end(), 0);
    struct Conflict {
      int i, j;
      double sep;
      avoid::Correction corr;
    };
    std::vector<Conflict> conflicts;
    std::vector<geom::Point2> shared_pos(n);
    for (int i = 0; i < n; ++i) {
      shared_pos[i] = drones[i].position;
      if (scenario.shared_position_noise_m > 0.0) {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const double r = scenario.shared_position_noise_m * std::sqrt(u01(noise_rng));
        const double ang = 2.0 * std::numbers::pi * u01(noise_rng);
        shared_pos[i] = shared_pos[i] + geom::Vec2{r * std::cos(ang),
                                                   r * std::sin(ang)};
      }
    }
    for (int i = 0; i < n; ++i) {
      if (drones[i].mode == sim::Mode::Failed) continue;
      for (int j = i + 1; j < n; ++j) {
        if (drones[j].mode == sim::Mode::Failed) continue;
        const avoid::RelativeState rel{shared_pos[i] - shared_pos[j],
                                       drones[i].velocity - drones[j].velocity};
        // Act only on imminent conflicts. A vanishing relative velocity
        // puts the closest approach arbitrarily far out; correcting for
        // it would freeze the mission on phantom conflicts.
        if (rel.c.norm_sq() > 0.0 &&
            avoid::closest_approach_time(rel) > kAvoidanceHorizonS) {
          continue;
        }
        const auto corr = avoid::plan_avoidance(
            {shared_pos[i], drones[i].velocity},
            {shared_pos[j], drones[j].velocity}, scenario.avoidance);
        if (corr) {
          conflicts.push_back(
              {i, j, geom::distance(drones[i].position, drones[j].position),
               *corr});
        }
      }
    }
    std::stable_sort(conflicts.begin(), conflicts.end(),
                     [](const Conflict& a, const Conflict& b) {
                       return a.sep < b.sep;
                     });
    for (const auto& c : conflicts) {
      if (!overridden[c.i] && c.corr.u_a.norm() > 1e-9) {
        drones[c.i].velocity = c.corr.u_a.normalized() * speed;
        overridden[c.i] = 1;
      }
      if (!overridden[c.j] && c.corr.u_b.norm() > 1e-9) {
        drones[c.j].velocity = c.corr.u_b.normalized() * speed;
        overridden[c.j] = 1;
      }
    }

    for (int i = 0; i < n; ++i) {
      if (drones[i].mode == sim::Mode::Failed) continue;
      drones[i].position = drones[i].position + drones[i].velocity * dt;
      if (!scenario.area.contains(drones[i].position)) {
        drones[i].position = scenario.area.project(drones[i].position);
      }
      controllers[i]->post_integrate(drones[i], pop, board,
                                     overridden[i] != 0);
    }
    for (int i = 0; i < n; ++i) tracks[i].push_back(drones[i].position);

    // Metrics.
    if (scenario.algorithm == Algorithm::SweepSearch) {
      if (board.version() != board_version_cached) {
        board_version_cached = board.version();
        served_cached =
            scenario.double_count_served
                ? served_users_double_count(board.candidates(), n)
                : served_users(board.candidates(), n, pop, r_d);
      }
      candidates = board.candidates();
    } else {
      // The control center pools every reported deployment (drones are
      // interchangeable once a site is known) and fills the fleet's
      // hover slots greedily by marginal covered users.
      std::vector<sim::Candidate> pooled;
      for (int i = 0; i < n; ++i) {
        const auto opts = controllers[i]->deployment_options();
        pooled.insert(pooled.end(), opts.begin(), opts.end());
      }
      std::vector<CandidateKey> pool_key;
      pool_key.reserve(pooled.size());
      for (const auto& c : pooled) {
        pool_key.push_back({c.location.x, c.location.y, c.served});
      }
      if (pool_key != pool_cached) {
        pool_cached = std::move(pool_key);
        bests_cached = sim::select_coverage_deployments(pooled, n, pop, r_d);
      }
      std::vector<sim::Candidate> bests = bests_cached;
      std::stable_sort(bests.begin(), bests.end(),
                       [](const sim::Candidate& a, const sim::Candidate& b) {
                         return a.served > b.served;
                       });
      std::vector<CandidateKey> key;
      key.reserve(bests.size());
      for (const auto& b : bests) {
        key.push_back({b.location.x, b.location.y, b.served});
      }
      if (key != baseline_cached) {
        baseline_cached = key;
        served_cached = scenario.double_count_served
                            ? served_users_double_count(bests, n)
                            : served_users(bests, n, pop, r_d);
      }
      candidates = std::move(bests);
    }

    long served = served_cached;
    if (scenario.algorithm != Algorithm::RandomSearch) {
      best_so_far = std::max(best_so_far, served);
      served = best_so_far;
    }

    double min_sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (drones[i].mode == sim::Mode::Failed) continue;
      for (int j = i + 1; j < n; ++j) {
        if (drones[j].mode == sim::Mode::Failed) continue;
        min_sep =
            std::min(min_sep, geom::distance(drones[i].position,
                                             drones[j].position));
      }
    }
    min_sep_run = std::min(min_sep_run, min_sep);

    result.series.push_back(
        {t, served, static_cast<int>(candidates.size()), min_sep});
  }

  result.candidates = candidates;
  result.min_pairwise_separation_m = min_sep_run;
  result.final_served = result.series.empty() ? 0 : result.series.back().served_users;
  {
    sim::Blackboard final_board;
    for (const auto& c : candidates) {
      final_board.publish_candidate(c.location, c.served);
    }
    result.final_deployment = sim::finalize_deployment(final_board, n);
  }
  if (scenario.algorithm == Algorithm::SweepSearch) {
    result.swept_fraction = swept_fraction_mc(
        scenario.area, tracks, r_d, substream(scenario.seed, 2), 10000);
  }
  return result;
}

EnsembleResult ensemble(const Scenario& scenario, int n_runs,
                        std::uint64_t base_seed) {
  if (n_runs < 1) {
    throw std::invalid_argument("ensemble: n_runs must be >= 1");
  }
  EnsembleResult out;
  out.runs.reserve(n_runs);
  for (int i = 0; i < n_runs; ++i) {
    Scenario s = scenario;
    s.seed = base_seed + static_cast<std::uint64_t>(i);
    out.runs.push_back(run(s));
  }
  const std::size_t len = out.runs.front().series.size();
  out.t_s.resize(len);
  out.mean_served.assign(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    out.t_s[k] = out.runs.front().series[k].t_s;
    double sum = 0.0;
    for (const auto& r : out.runs) {
      sum += static_cast<double>(r.series[k].served_users);
    }
    out.mean_served[k] = sum / static_cast<double>(n_runs);
  }
  return out;
}

void write_csv_header(std::ostream& out) {
  out << "algorithm,run,seed,t_s,served_users,n_candidates,min_sep_m\n";
}

void write_csv_rows(std::ostream& out, Algorithm algorithm, int run_index,
                    std::uint64_t seed, const RunResult& result) {
  const std::string name = algorithm_name(algorithm);
  char buf[256];
  for (const auto& s : result.series) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%llu,%.3f,%ld,%d,%.3f\n",
                  name.c_str(), run_index,
                  static_cast<unsigned long long>(seed), s.t_s,
                  s.served_users, s.n_candidates, s.min_sep_m);
    out << buf;
  }
}

void write_csv(std::ostream& out, Algorithm algorithm, std::uint64_t base_seed,
               const EnsembleResult& ens) {
  write_csv_header(out);
  for (std::size_t i = 0; i < ens.runs.size(); ++i) {
    write_csv_rows(out, algorithm, static_cast<int>(i),
                   base_seed + static_cast<std::uint64_t>(i), ens.runs[i]);
  }
}

}  // namespace engine
}  // namespace dronesweep
