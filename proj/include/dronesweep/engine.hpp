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

#ifndef DRONESWEEP_ENGINE_HPP
#define DRONESWEEP_ENGINE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dronesweep/avoid.hpp"
#include "dronesweep/controllers.hpp"
#include "dronesweep/geom.hpp"
#include "dronesweep/users.hpp"

namespace dronesweep {
namespace engine {

enum class Algorithm { SweepSearch, RandomSearch, AttractiveSearch };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct FailureEvent {
  int drone_id = 0;
  double time_s = 0.0;
};

struct Scenario {
  geom::ConvexPolygon area;
  users::PopulationSpec population;
  int n_drones = 1;
  sim::SearchParams params;
  avoid::AvoidanceParams avoidance;
  std::vector<geom::Disk> surviving_stations;  // pre-detected served areas
  Algorithm algorithm = Algorithm::SweepSearch;
  double duration_s = 0.0;
  std::uint64_t seed = 0;
  std::optional<FailureEvent> failure;
  double sweep_overlap = 0.0;
  bool double_count_served = false;     // sum per-disk counts instead of union
  double shared_position_noise_m = 0.0; // blur on positions fed to avoidance

  void validate() const;
};

struct TimeSample {
  double t_s = 0.0;
  long served_users = 0;
  int n_candidates = 0;
  double min_sep_m = 0.0;
};

struct RunResult {
  std::vector<TimeSample> series;            // one sample per step
  std::vector<geom::Point2> final_deployment;
  std::vector<sim::Candidate> candidates;    // ranked, at end of run
  double min_pairwise_separation_m = 0.0;    // over the whole run
  double swept_fraction = 0.0;               // Monte Carlo, 0 for baselines
  long final_served = 0;
};

// Distinct users inside the union of the top-n candidate disks.
long served_users(const std::vector<sim::Candidate>& candidates, int n_drones,
                  const users::UserPopulation& population,
                  double coverage_radius);

// Sum of the top-n recorded counts, ignoring disk overlap; the
// comparison mode behind Scenario::double_count_served.
long served_users_double_count(const std::vector<sim::Candidate>& candidates,
                               int n_drones);

RunResult run(const Scenario& scenario);

struct EnsembleResult {
  std::vector<double> t_s;
  std::vector<RunResult> runs;       // run i uses seed base_seed + i
  std::vector<double> mean_served;   // across runs, per time sample
};

EnsembleResult ensemble(const Scenario& scenario, int n_runs,
                        std::uint64_t base_seed);

// Time-series CSV, one row per (run, sample). Byte-identical for
// identical scenarios and seeds.
void write_csv(std::ostream& out, Algorithm algorithm,
               std::uint64_t base_seed, const EnsembleResult& ens);
void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, Algorithm algorithm, int run_index,
                    std::uint64_t seed, const RunResult& result);

// Deterministic per-purpose substream seeds.
std::uint64_t substream(std::uint64_t seed, std::uint64_t stream);

}  // namespace engine
}  // namespace dronesweep

#endif  // DRONESWEEP_ENGINE_HPP
