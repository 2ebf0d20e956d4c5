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

#ifndef DRONESWEEP_CONTROLLERS_HPP
#define DRONESWEEP_CONTROLLERS_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "dronesweep/geom.hpp"
#include "dronesweep/sweep_path.hpp"
#include "dronesweep/users.hpp"

namespace dronesweep {
namespace sim {

struct SearchParams {
  double epsilon_threshold = 10.0;  // users
  double sample_time_s = 0.5;
  double speed_mps = 10.0;
  double coverage_radius_m = 500.0;

  void validate() const;
};

enum class Mode { Transit, Sweep, Search, Return, Done, Failed };

struct Breakpoint {
  geom::Point2 pos;
  geom::Vec2 vel;
};

struct DroneState {
  int id = 0;
  geom::Point2 position;
  geom::Vec2 velocity;
  Mode mode = Mode::Transit;
  std::size_t path_cursor = 0;
  std::optional<Breakpoint> breakpoint;
  long last_count = -1;  // -1: no sample yet
  std::vector<std::pair<geom::Point2, long>> search_log;
};

struct Candidate {
  geom::Point2 location;
  long served = 0;
  std::uint64_t discovery_order = 0;
};

// Centralized store of detected areas and ranked deployment candidates,
// shared by all drones through the control center.
class Blackboard {
 public:
  void add_detected(const geom::Disk& d) {
    detected_.push_back(d);
    ++version_;
  }
  bool overlaps_detected(const geom::Disk& d) const {
    for (const auto& a : detected_) {
      if (a.intersects(d)) return true;
    }
    return false;
  }
  void publish_candidate(const geom::Point2& location, long served);

  // Sorted by served users descending, stable by discovery order.
  const std::vector<Candidate>& candidates() const { return candidates_; }
  const std::vector<geom::Disk>& detected_areas() const { return detected_; }
  std::uint64_t version() const { return version_; }

 private:
  std::vector<geom::Disk> detected_;
  std::vector<Candidate> candidates_;
  std::uint64_t next_order_ = 0;
  std::uint64_t version_ = 0;
};

// True when the user-count jump strictly exceeds the threshold and the
// coverage disk is clear of already-detected areas.
bool detect_encounter(long previous_count, long current_count,
                      const geom::Point2& position, const Blackboard& board,
                      const SearchParams& params);

// Sample points of the front-half-circle search path: radius R_d around
// the encounter point, spanning heading +/- pi/2, one sample every
// v * T_s of arc length. Points outside `clip_area` (when given) are
// projected onto it.
std::vector<geom::Point2> search_arc_points(const geom::Point2& encounter,
                                            double heading,
                                            const SearchParams& params,
                                            const geom::ConvexPolygon* clip_area);

// Best deployment over the search arc: the argmax covered-user sample,
// ties resolved to the first sample encountered.
std::pair<geom::Point2, long> search_arc(const geom::Point2& encounter,
                                         double heading,
                                         const users::UserPopulation& population,
                                         const SearchParams& params,
                                         const geom::ConvexPolygon* clip_area =
                                             nullptr);

// Top min(n_drones, candidates) locations by served count.
std::vector<geom::Point2> finalize_deployment(const Blackboard& board,
                                              int n_drones);

// A user group the fleet can serve from one hover point: the smallest
// disk around a dense component of users, split until it fits inside
// the coverage radius. Users attach to a drone once its coverage
// touches them, so the extent of a touched group is known centrally.
struct CaptureSite {
  geom::Point2 center;
  double radius = 0.0;
  std::vector<std::uint32_t> members;  // population storage slots
};

// Capture sites of every dense user component (more than the encounter
// threshold's worth of members).
std::vector<CaptureSite> capture_sites(const users::UserPopulation& population,
                                       const SearchParams& params);

// Per-drone mission logic. step() senses and decides the velocity for
// the step; the engine integrates positions (possibly overriding the
// velocity for collision avoidance) and then calls post_integrate().
class Controller {
 public:
  virtual ~Controller() = default;
  virtual void step(DroneState& drone, Blackboard& board,
                    const users::UserPopulation& population,
                    const std::vector<geom::Point2>& peer_positions,
                    double dt) = 0;
  virtual void post_integrate(DroneState& drone,
                              const users::UserPopulation& population,
                              Blackboard& board, bool velocity_overridden) = 0;
  // The drone's own best-known deployment, when the controller tracks one.
  virtual std::optional<Candidate> best_known() const { return std::nullopt; }
  // Every deployment the drone could report to the control center; the
  // default is the single best-known one.
  virtual std::vector<Candidate> deployment_options() const {
    const auto b = best_known();
    if (!b) return {};
    return {*b};
  }
};

// Sweep-and-search mission: follow the zigzag, interrupt into an arc
// search at each encounter, publish the best deployment, return to the
// breakpoint and resume.
class SweepSearchController : public Controller {
 public:
  // `sites` may share one precomputed capture-site list across the
  // fleet; when null the controller derives its own on first use.
  SweepSearchController(geom::ConvexPolygon sub_area,
                        sweep_path::ZigzagPath path, SearchParams params,
                        const geom::ConvexPolygon* operating_area,
                        const std::vector<CaptureSite>* sites = nullptr);

  void step(DroneState& drone, Blackboard& board,
            const users::UserPopulation& population,
            const std::vector<geom::Point2>& peer_positions,
            double dt) override;
  void post_integrate(DroneState& drone,
                      const users::UserPopulation& population,
                      Blackboard& board, bool velocity_overridden) override;

  // Failure takeover: sweep this region after the own path is finished.
  void queue_extra_area(geom::ConvexPolygon area);

  // Unswept remainder of the assigned sub-area, empty when fully swept.
  std::optional<geom::ConvexPolygon> remaining_region() const;

  const sweep_path::ZigzagPath& path() const { return path_; }

 private:
  const geom::Point2* current_target(const DroneState& drone) const;
  void aim(DroneState& drone, const geom::Point2& target,
           const SearchParams& p) const;
  void mark_seen_sites(const geom::Point2& position,
                       const users::UserPopulation& population);
  // Publishes every touched, not-yet-published capture site; returns
  // how many candidates were appended.
  int publish_seen_sites(Blackboard& board,
                         const users::UserPopulation& population);

  geom::ConvexPolygon sub_area_;
  sweep_path::ZigzagPath path_;
  SearchParams params_;
  const geom::ConvexPolygon* operating_area_;
  std::deque<geom::ConvexPolygon> extra_areas_;

  std::vector<geom::Point2> arc_points_;
  std::size_t arc_cursor_ = 0;
  std::size_t laps_completed_ = 0;

  const std::vector<CaptureSite>* sites_;
  std::vector<CaptureSite> own_sites_;
  bool sites_ready_ = false;
  std::vector<char> site_seen_;
};

// Straight flight with direction resampling at the area boundary and at
// other drones' coverage disks; remembers its best-observed location.
class RandomSearchController : public Controller {
 public:
  RandomSearchController(const geom::ConvexPolygon& area, SearchParams params,
                         std::uint64_t seed, int drone_id);

  void step(DroneState& drone, Blackboard& board,
            const users::UserPopulation& population,
            const std::vector<geom::Point2>& peer_positions,
            double dt) override;
  void post_integrate(DroneState&, const users::UserPopulation&, Blackboard&,
                      bool) override {}
  std::optional<Candidate> best_known() const override;
  std::vector<Candidate> deployment_options() const override;

 private:
  struct Find {
    geom::Point2 pos;
    long count = 0;
  };

  const geom::ConvexPolygon& area_;
  SearchParams params_;
  std::mt19937_64 rng_;
  int drone_id_;
  // Best observations at mutually distinct locations.
  std::vector<Find> finds_;
};

// Velocity blends inertia with attraction toward the drone's own
// best-known position; boundary rules as in the random search.
class AttractiveSearchController : public Controller {
 public:
  AttractiveSearchController(const geom::ConvexPolygon& area,
                             SearchParams params, std::uint64_t seed,
                             int drone_id, double inertia = 0.9,
                             double attraction = 0.5);

  void step(DroneState& drone, Blackboard& board,
            const users::UserPopulation& population,
            const std::vector<geom::Point2>& peer_positions,
            double dt) override;
  void post_integrate(DroneState&, const users::UserPopulation&, Blackboard&,
                      bool) override {}
  std::optional<Candidate> best_known() const override;

 private:
  const geom::ConvexPolygon& area_;
  SearchParams params_;
  std::mt19937_64 rng_;
  int drone_id_;
  double inertia_;
  double attraction_;
  bool has_best_ = false;
  geom::Point2 best_pos_;
  long best_count_ = -1;
};

// One deployment per drone from the drones' reported options. Options
// within `merge_radius` of each other describe the same site; the
// control center assigns drones to distinct sites so that the total
// served count is maximal. Result order follows the input drone order.
std::vector<Candidate> assign_deployments(
    const std::vector<std::vector<Candidate>>& options_per_drone,
    double merge_radius);

// Up to `n_slots` deployments chosen greedily by marginal covered
// users, re-queried against the population with overlap
// de-duplication: a pick near an already-served group only counts its
// newly covered users. `served` of each result is that marginal count.
// Ties go to the earlier option; picks with zero marginal value are
// dropped.
std::vector<Candidate> select_coverage_deployments(
    const std::vector<Candidate>& options, int n_slots,
    const users::UserPopulation& population, double radius);

// Redraws a heading so it points away from every nearby constraint;
// shared by both baseline searchers.
geom::Vec2 resample_direction(const geom::ConvexPolygon& area,
                              const geom::Point2& pos,
                              const std::vector<geom::Point2>& peers,
                              double coverage_radius, std::mt19937_64& rng);

// True when the current velocity points at a nearby wall or peer disk.
bool direction_blocked(const geom::ConvexPolygon& area, const geom::Point2& pos,
                       const geom::Vec2& vel,
                       const std::vector<geom::Point2>& peers,
                       double coverage_radius);

}  // namespace sim
}  // namespace dronesweep

#endif  // DRONESWEEP_CONTROLLERS_HPP
