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

#ifndef DRONESWEEP_USERS_HPP
#define DRONESWEEP_USERS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dronesweep/geom.hpp"

namespace dronesweep {
namespace users {

struct PopulationSpec {
  int n_clusters = 0;
  double cluster_radius_m = 0.0;       // R_c
  double clustered_density = 0.0;      // users per m^2 inside a cluster
  double background_density = 0.0;     // users per m^2 over the whole area
  geom::ConvexPolygon area;

  void validate() const;
};

struct User {
  geom::Point2 pos;
  int cluster_id = -1;  // -1 for background users
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string message;
};

// Deployment-regime checks: a cluster wider than the coverage disk is an
// error; a crowded area or a background-heavy population is a warning.
std::vector<Diagnostic> validate_scenario(const PopulationSpec& spec,
                                          int n_drones, double coverage_radius);

// Immutable user point set with a uniform-grid spatial index. Counting
// queries run on contiguous per-cell coordinate arrays so the inner loop
// can use the SIMD kernels.
class UserPopulation {
 public:
  // Cluster centers i.i.d. uniform over the area, redrawn until the full
  // cluster disk fits inside; per-cluster and background user counts are
  // Poisson in density times area. Deterministic for a fixed seed.
  static UserPopulation generate(const PopulationSpec& spec,
                                 std::uint64_t seed,
                                 double grid_cell_m = 500.0);

  static UserPopulation from_users(std::vector<User> users,
                                   std::vector<geom::Point2> cluster_centers,
                                   double grid_cell_m = 500.0);

  std::size_t size() const { return xs_.size(); }
  const std::vector<geom::Point2>& cluster_centers() const {
    return cluster_centers_;
  }

  // Boundary-inclusive count of users inside the disk.
  long count_in_disk(const geom::Disk& disk) const;
  // Linear-scan reference for the grid-indexed query.
  long count_in_disk_brute(const geom::Disk& disk) const;

  // Appends the storage slot of each user inside the disk. Slots are
  // stable for the lifetime of the population and lie in [0, size()).
  void collect_in_disk(const geom::Disk& disk,
                       std::vector<std::uint32_t>& out) const;

  geom::Point2 position(std::uint32_t slot) const {
    return {xs_[slot], ys_[slot]};
  }

  // Single-linkage components: users closer than link_m (transitively)
  // share a component. Components smaller than min_size are dropped;
  // the rest are sorted by their smallest slot, members sorted by slot.
  std::vector<std::vector<std::uint32_t>> linkage_components(
      double link_m, std::size_t min_size) const;

  // Users in generation order (cluster by cluster, then background).
  std::vector<User> users() const;

  void export_csv(std::ostream& out) const;
  static UserPopulation import_csv(std::istream& in, double grid_cell_m = 500.0);

 private:
  UserPopulation() = default;
  void build_index(const std::vector<User>& users, double grid_cell_m);
  std::size_t cell_of(double x, double y) const;

  // Sorted by grid cell.
  std::vector<double> xs_, ys_;
  std::vector<int> cluster_ids_;
  std::vector<std::uint32_t> order_;  // generation order of each slot
  std::vector<std::uint32_t> cell_start_;
  std::vector<geom::Point2> cluster_centers_;

  double cell_m_ = 500.0;
  double min_x_ = 0.0, min_y_ = 0.0;
  std::size_t nx_ = 1, ny_ = 1;
};

}  // namespace users
}  // namespace dronesweep

#endif  // DRONESWEEP_USERS_HPP
