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

#include "dronesweep/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dronesweep {
namespace sim {

namespace {

constexpr double kPi = std::numbers::pi;

long sense(const users::UserPopulation& pop, const geom::Point2& at,
           double radius) {
  return pop.count_in_disk({at, radius});
}

// Outward normal of the polygon edge nearest to `pos`.
geom::Vec2 nearest_edge_outward(const geom::ConvexPolygon& area,
                                const geom::Point2& pos) {
  const auto& v = area.vertices();
  const std::size_t m = v.size();
  double best = std::numeric_limits<double>::infinity();
  geom::Vec2 out{1.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    const geom::Point2& a = v[i];
    const geom::Point2& b = v[(i + 1) % m];
    const double d = geom::distance_to_segment(pos, a, b);
    if (d < best) {
      best = d;
      const geom::Vec2 e = b - a;
      out = geom::Vec2{e.dy, -e.dx}.normalized();  // interior is left: CCW
    }
  }
  return out;
}

}  // namespace

void SearchParams::validate() const {
  if (!(epsilon_threshold >= 0.0)) {
    throw std::invalid_argument("SearchParams: threshold must be >= 0");
  }
  if (!(sample_time_s > 0.0) || !(speed_mps > 0.0) ||
      !(coverage_radius_m > 0.0)) {
    throw std::invalid_argument(
        "SearchParams: sample time, speed and coverage radius must be > 0");
  }
}

void Blackboard::publish_candidate(const geom::Point2& location, long served) {
  Candidate c{location, served, next_order_++};
  auto it = std::upper_bound(candidates_.begin(), candidates_.end(), c,
                             [](const Candidate& a, const Candidate& b) {
                               if (a.served != b.served)
                                 return a.served > b.served;
                               return a.discovery_order < b.discovery_order;
                             });
  candidates_.insert(it, c);
  ++version_;
}

bool detect_encounter(long previous_count, long current_count,
                      const geom::Point2& position, const Blackboard& board,
                      const SearchParams& params) {
  if (previous_count < 0) return false;
  const double jump = static_cast<double>(current_count - previous_count);
  if (!(jump > params.epsilon_threshold)) return false;
  return !board.overlaps_detected({position, params.coverage_radius_m});
}

std::vector<geom::Point2> search_arc_points(
    const geom::Point2& encounter, double heading, const SearchParams& params,
    const geom::ConvexPolygon* clip_area) {
  const double r = params.coverage_radius_m;
  const double arc_step = params.speed_mps * params.sample_time_s;
  const double arc_len = kPi * r;
  const std::size_t n =
      static_cast<std::size_t>(std::floor(arc_len / arc_step)) + 1;

  std::vector<geom::Point2> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ang = heading - 0.5 * kPi + static_cast<double>(i) * arc_step / r;
    geom::Point2 p = encounter + geom::unit(ang) * r;
    if (clip_area != nullptr && !clip_area->contains(p)) {
      p = clip_area->project(p);
    }
    if (!pts.empty() && geom::distance(pts.back(), p) < 1e-6) continue;
    pts.push_back(p);
  }
  return pts;
}

std::pair<geom::Point2, long> search_arc(const geom::Point2& encounter,
                                         double heading,
                                         const users::UserPopulation& population,
                                         const SearchParams& params,
                                         const geom::ConvexPolygon* clip_area) {
  const auto pts = search_arc_points(encounter, heading, params, clip_area);
  geom::Point2 best_pos = pts.front();
  long best = -1;
  for (const auto& p : pts) {
    const long c = sense(population, p, params.coverage_radius_m);
    if (c > best) {
      best = c;
      best_pos = p;
    }
  }
  return {best_pos, best};
}

std::vector<geom::Point2> finalize_deployment(const Blackboard& board,
                                              int n_drones) {
  std::vector<geom::Point2> out;
  const auto& cands = board.candidates();
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(0, n_drones)),
                            cands.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(cands[i].location);
  return out;
}

namespace {

// Splits a user group until its enclosing disk fits the coverage
// radius. The 2-means split is seeded with the two most distant members
// so adjacent dense groups separate along their gap.
void split_into_sites(const users::UserPopulation& pop,
                      const std::vector<std::uint32_t>& slots, double r_d,
                      int depth, std::vector<CaptureSite>& out) {
  std::vector<geom::Point2> pts;
  pts.reserve(slots.size());
  for (const auto s : slots) pts.push_back(pop.position(s));
  const geom::Disk mec = geom::min_enclosing_circle(pts);
  if (mec.radius <= r_d || depth >= 6 || slots.size() < 2) {
    out.push_back({mec.center, mec.radius, slots});
    return;
  }

  std::size_t i1 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (geom::distance(pts[i], pts[0]) > geom::distance(pts[i1], pts[0])) {
      i1 = i;
    }
  }
  std::size_t i2 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (geom::distance(pts[i], pts[i1]) > geom::distance(pts[i2], pts[i1])) {
      i2 = i;
    }
  }
  geom::Point2 c1 = pts[i1], c2 = pts[i2];
  std::vector<char> side(pts.size(), 0);
  for (int iter = 0; iter < 20; ++iter) {
    double sx1 = 0, sy1 = 0, sx2 = 0, sy2 = 0;
    std::size_t n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      side[i] = geom::distance(pts[i], c2) < geom::distance(pts[i], c1);
      if (side[i]) {
        sx2 += pts[i].x;
        sy2 += pts[i].y;
        ++n2;
      } else {
        sx1 += pts[i].x;
        sy1 += pts[i].y;
        ++n1;
      }
    }
    if (n1 == 0 || n2 == 0) break;
    c1 = {sx1 / n1, sy1 / n1};
    c2 = {sx2 / n2, sy2 / n2};
  }
  std::vector<std::uint32_t> a, b;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    (side[i] ? b : a).push_back(slots[i]);
  }
  if (a.empty() || b.empty()) {
    // Degenerate split: halve along the diameter axis instead.
    a.clear();
    b.clear();
    const geom::Vec2 axis = pts[i2] - pts[i1];
    std::vector<std::pair<double, std::uint32_t>> proj;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      proj.push_back({(pts[i] - pts[i1]).dot(axis), slots[i]});
    }
    std::stable_sort(proj.begin(), proj.end(),
                     [](const auto& x, const auto& y) {
                       return x.first < y.first;
                     });
    for (std::size_t i = 0; i < proj.size(); ++i) {
      (i < proj.size() / 2 ? a : b).push_back(proj[i].second);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
  }
  split_into_sites(pop, a, r_d, depth + 1, out);
  split_into_sites(pop, b, r_d, depth + 1, out);
}

// Spacing that keeps a detectable cluster's members linked (their
// spacing is meters at densities worth deploying for) while isolated
// background users stay hundreds of meters apart.
constexpr double kSiteLinkDistance = 60.0;

}  // namespace

std::vector<CaptureSite> capture_sites(const users::UserPopulation& population,
                                       const SearchParams& params) {
  const std::size_t min_size =
      static_cast<std::size_t>(params.epsilon_threshold) + 1;
  std::vector<CaptureSite> out;
  for (const auto& comp :
       population.linkage_components(kSiteLinkDistance, min_size)) {
    split_into_sites(population, comp, params.coverage_radius_m, 0, out);
  }
  return out;
}

SweepSearchController::SweepSearchController(
    geom::ConvexPolygon sub_area, sweep_path::ZigzagPath path,
    SearchParams params, const geom::ConvexPolygon* operating_area,
    const std::vector<CaptureSite>* sites)
    : sub_area_(std::move(sub_area)),
      path_(std::move(path)),
      params_(params),
      operating_area_(operating_area),
      sites_(sites) {
  params_.validate();
  if (path_.waypoints.size() < 2) {
    throw std::invalid_argument("SweepSearchController: empty path");
  }
}

void SweepSearchController::queue_extra_area(geom::ConvexPolygon area) {
  extra_areas_.push_back(std::move(area));
}

std::optional<geom::ConvexPolygon> SweepSearchController::remaining_region()
    const {
  if (laps_completed_ >= path_.lap_count) return std::nullopt;
  const geom::Vec2 u = geom::unit(path_.sweep_direction);
  const geom::Vec2 n{u.dy, -u.dx};
  double t_lo = std::numeric_limits<double>::infinity();
  double t_hi = -t_lo;
  for (const auto& v : sub_area_.vertices()) {
    const double t = v.x * n.dx + v.y * n.dy;
    t_lo = std::min(t_lo, t);
    t_hi = std::max(t_hi, t);
  }
  double covered_t = t_lo;
  if (laps_completed_ > 0) {
    covered_t = std::min(
        t_hi, path_.lap_offsets[laps_completed_ - 1] + 0.5 * path_.lap_spacing);
  }
  if (covered_t <= t_lo + 1e-9) return sub_area_;
  if (covered_t >= t_hi - 1e-9) return std::nullopt;
  auto verts = sub_area_.clip_half_plane(-n, -covered_t);
  if (verts.size() < 3) return std::nullopt;
  try {
    auto poly = geom::ConvexPolygon::from_points(std::move(verts));
    if (poly.area() < 1e-6 * sub_area_.area()) return std::nullopt;
    return poly;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

const geom::Point2* SweepSearchController::current_target(
    const DroneState& drone) const {
  switch (drone.mode) {
    case Mode::Transit:
    case Mode::Sweep:
      if (drone.path_cursor < path_.waypoints.size()) {
        return &path_.waypoints[drone.path_cursor];
      }
      return nullptr;
    case Mode::Search:
      if (arc_cursor_ < arc_points_.size()) return &arc_points_[arc_cursor_];
      return nullptr;
    case Mode::Return:
      return drone.breakpoint ? &drone.breakpoint->pos : nullptr;
    default:
      return nullptr;
  }
}

void SweepSearchController::aim(DroneState& drone, const geom::Point2& target,
                                const SearchParams& p) const {
  const geom::Vec2 to = target - drone.position;
  const double d = to.norm();
  if (d < 1e-12) {
    // Hold heading; the snap in post_integrate advances the cursor.
    if (drone.velocity.norm_sq() == 0.0) drone.velocity = {p.speed_mps, 0.0};
    return;
  }
  drone.velocity = to * (p.speed_mps / d);
}

void SweepSearchController::mark_seen_sites(
    const geom::Point2& position, const users::UserPopulation& population) {
  if (!sites_ready_) {
    if (sites_ == nullptr) {
      own_sites_ = capture_sites(population, params_);
      sites_ = &own_sites_;
    }
    site_seen_.assign(sites_->size(), 0);
    sites_ready_ = true;
  }
  for (std::size_t i = 0; i < sites_->size(); ++i) {
    if (site_seen_[i]) continue;
    const auto& s = (*sites_)[i];
    if (geom::distance(position, s.center) <=
        params_.coverage_radius_m + s.radius) {
      site_seen_[i] = 1;
    }
  }
}

int SweepSearchController::publish_seen_sites(
    Blackboard& board, const users::UserPopulation& population) {
  int published = 0;
  for (std::size_t i = 0; i < sites_->size(); ++i) {
    if (!site_seen_[i]) continue;
    const auto& s = (*sites_)[i];
    bool already = false;
    for (const auto& c : board.candidates()) {
      if (geom::distance(c.location, s.center) <= 1.0) {
        already = true;
        break;
      }
    }
    if (already) continue;
    // Users inside a detected area are already served (surviving
    // ground stations or an earlier deployment); a site with no user
    // outside every detected area has nothing left to report.
    bool has_unserved = false;
    for (const auto m : s.members) {
      const geom::Point2 p = population.position(m);
      bool covered = false;
      for (const auto& d : board.detected_areas()) {
        if (d.contains(p)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        has_unserved = true;
        break;
      }
    }
    if (!has_unserved) continue;
    const long served =
        sense(population, s.center, params_.coverage_radius_m);
    board.add_detected({s.center, params_.coverage_radius_m});
    board.publish_candidate(s.center, served);
    ++published;
  }
  return published;
}

void SweepSearchController::step(DroneState& drone, Blackboard& board,
                                 const users::UserPopulation& population,
                                 const std::vector<geom::Point2>&, double) {
  if (drone.mode != Mode::Failed) {
    mark_seen_sites(drone.position, population);
  }
  switch (drone.mode) {
    case Mode::Transit: {
      if (drone.path_cursor == 0 &&
          drone.path_cursor < path_.waypoints.size() &&
          geom::distance(drone.position, path_.waypoints[0]) < 1e-9) {
        ++drone.path_cursor;
      }
      if (drone.path_cursor == 0) {
        aim(drone, path_.waypoints[0], params_);
        return;
      }
      drone.mode = Mode::Sweep;
      drone.last_count =
          sense(population, drone.position, params_.coverage_radius_m);
      [[fallthrough]];
    }
    case Mode::Sweep: {
      const long n_d =
          sense(population, drone.position, params_.coverage_radius_m);
      if (detect_encounter(drone.last_count, n_d, drone.position, board,
                           params_)) {
        const double heading =
            std::atan2(drone.velocity.dy, drone.velocity.dx);
        drone.breakpoint = Breakpoint{drone.position, drone.velocity};
        arc_points_ = search_arc_points(drone.position, heading, params_,
                                        operating_area_);
        arc_cursor_ = 0;
        drone.search_log.clear();
        drone.mode = Mode::Search;
        aim(drone, arc_points_[0], params_);
        return;
      }
      drone.last_count = n_d;
      const geom::Point2* t = current_target(drone);
      if (t == nullptr) {
        // Path finished; take over a queued region or stop.
        if (!extra_areas_.empty()) {
          geom::ConvexPolygon next = std::move(extra_areas_.front());
          extra_areas_.pop_front();
          sub_area_ = next;
          path_ = sweep_path::generate_zigzag(next, path_.sweep_direction,
                                              params_.coverage_radius_m);
          laps_completed_ = 0;
          drone.path_cursor = 0;
          drone.mode = Mode::Transit;
          aim(drone, path_.waypoints[0], params_);
        } else {
          // Final report: any touched site still unpublished (its
          // encounters were shadowed by neighboring detected areas)
          // goes to the center before the drone signs off.
          publish_seen_sites(board, population);
          drone.mode = Mode::Done;
          drone.velocity = {0.0, 0.0};
        }
        return;
      }
      aim(drone, *t, params_);
      return;
    }
    case Mode::Search: {
      const geom::Point2* t = current_target(drone);
      if (t == nullptr) {
        drone.mode = Mode::Return;
        if (drone.breakpoint) aim(drone, drone.breakpoint->pos, params_);
        return;
      }
      aim(drone, *t, params_);
      return;
    }
    case Mode::Return: {
      aim(drone, drone.breakpoint->pos, params_);
      return;
    }
    case Mode::Done:
    case Mode::Failed:
      drone.velocity = {0.0, 0.0};
      return;
  }
}

void SweepSearchController::post_integrate(DroneState& drone,
                                           const users::UserPopulation& population,
                                           Blackboard& board,
                                           bool velocity_overridden) {
  if (velocity_overridden) return;
  const geom::Point2* t = current_target(drone);
  if (t == nullptr) return;
  const double snap_tol =
      params_.speed_mps * params_.sample_time_s * (1.0 + 1e-9);
  if (geom::distance(drone.position, *t) > snap_tol) return;
  drone.position = *t;

  switch (drone.mode) {
    case Mode::Transit:
    case Mode::Sweep: {
      for (std::size_t k = 0; k < path_.lap_end_index.size(); ++k) {
        if (path_.lap_end_index[k] == drone.path_cursor) {
          laps_completed_ = std::max(laps_completed_, k + 1);
        }
      }
      ++drone.path_cursor;
      break;
    }
    case Mode::Search: {
      const long n_d =
          sense(population, drone.position, params_.coverage_radius_m);
      drone.search_log.emplace_back(drone.position, n_d);
      ++arc_cursor_;
      if (arc_cursor_ >= arc_points_.size()) {
        mark_seen_sites(drone.position, population);
        if (publish_seen_sites(board, population) == 0) {
          // Nothing attached near this search (a count jump without a
          // dense group behind it): fall back to the arc argmax.
          geom::Point2 best_pos = drone.search_log.front().first;
          long best = -1;
          for (const auto& [p, c] : drone.search_log) {
            if (c > best) {
              best = c;
              best_pos = p;
            }
          }
          board.add_detected({best_pos, params_.coverage_radius_m});
          board.publish_candidate(best_pos, best);
        }
        drone.mode = Mode::Return;
      }
      break;
    }
    case Mode::Return: {
      // Resume the sweep exactly as it was interrupted.
      drone.velocity = drone.breakpoint->vel;
      drone.breakpoint.reset();
      drone.mode = Mode::Sweep;
      drone.last_count =
          sense(population, drone.position, params_.coverage_radius_m);
      break;
    }
    default:
      break;
  }
}

bool direction_blocked(const geom::ConvexPolygon& area, const geom::Point2& pos,
                       const geom::Vec2& vel,
                       const std::vector<geom::Point2>& peers,
                       double coverage_radius) {
  if (vel.norm_sq() == 0.0) return true;
  if (area.distance_to_boundary(pos) <= coverage_radius) {
    const geom::Vec2 out = nearest_edge_outward(area, pos);
    if (vel.dot(out) > 0.0) return true;
  }
  for (const auto& q : peers) {
    const geom::Vec2 to_peer = q - pos;
    if (to_peer.norm() <= 2.0 * coverage_radius && vel.dot(to_peer) > 0.0) {
      return true;
    }
  }
  return false;
}

geom::Vec2 resample_direction(const geom::ConvexPolygon& area,
                              const geom::Point2& pos,
                              const std::vector<geom::Point2>& peers,
                              double coverage_radius, std::mt19937_64& rng) {
  // The redraw half-circle centers on the inward normal or the away-from-
  // peer direction, whichever constraint is active; with several active
  // constraints, redraw until all accept.
  geom::Vec2 center{0.0, 0.0};
  if (area.distance_to_boundary(pos) <= coverage_radius) {
    center = center - nearest_edge_outward(area, pos);
  }
  for (const auto& q : peers) {
    const geom::Vec2 away = pos - q;
    if (away.norm() <= 2.0 * coverage_radius && away.norm_sq() > 0.0) {
      center = center + away.normalized();
    }
  }
  if (center.norm_sq() == 0.0) center = {1.0, 0.0};
  const double base = std::atan2(center.dy, center.dx);

  std::uniform_real_distribution<double> half(-0.5 * kPi, 0.5 * kPi);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const geom::Vec2 dir = geom::unit(base + half(rng));
    if (!direction_blocked(area, pos, dir, peers, coverage_radius)) return dir;
  }
  // Crowded corner: head for the centroid.
  const geom::Vec2 to_mid = area.centroid() - pos;
  if (to_mid.norm_sq() > 0.0) return to_mid.normalized();
  return {1.0, 0.0};
}

RandomSearchController::RandomSearchController(const geom::ConvexPolygon& area,
                                               SearchParams params,
                                               std::uint64_t seed, int drone_id)
    : area_(area), params_(params), rng_(seed), drone_id_(drone_id) {
  params_.validate();
}

void RandomSearchController::step(DroneState& drone, Blackboard&,
                                  const users::UserPopulation& population,
                                  const std::vector<geom::Point2>& peers,
                                  double) {
  if (drone.mode == Mode::Failed) {
    drone.velocity = {0.0, 0.0};
    return;
  }
  drone.mode = Mode::Sweep;
  const double r = params_.coverage_radius_m;
  const long n_d = sense(population, drone.position, r);

  // Log the observation. Observations within 2R of each other describe
  // the same spot, so they share one entry holding the best count seen.
  if (n_d > 0) {
    bool merged = false;
    for (auto& f : finds_) {
      if (geom::distance(drone.position, f.pos) < r) {
        if (n_d > f.count) {
          f.count = n_d;
          f.pos = drone.position;
        }
        merged = true;
        break;
      }
    }
    if (!merged) finds_.push_back({drone.position, n_d});
  }

  geom::Vec2 dir = drone.velocity;
  if (direction_blocked(area_, drone.position, dir, peers,
                        params_.coverage_radius_m)) {
    dir = resample_direction(area_, drone.position, peers,
                             params_.coverage_radius_m, rng_);
  } else {
    dir = dir.normalized();
  }
  drone.velocity = dir * params_.speed_mps;
}

std::optional<Candidate> RandomSearchController::best_known() const {
  const Find* best = nullptr;
  for (const auto& f : finds_) {
    if (!best || f.count > best->count) best = &f;
  }
  if (!best) return std::nullopt;
  return Candidate{best->pos, best->count,
                   static_cast<std::uint64_t>(drone_id_)};
}

std::vector<Candidate> RandomSearchController::deployment_options() const {
  std::vector<Candidate> out;
  out.reserve(finds_.size());
  for (const auto& f : finds_) {
    out.push_back({f.pos, f.count, static_cast<std::uint64_t>(drone_id_)});
  }
  return out;
}

AttractiveSearchController::AttractiveSearchController(
    const geom::ConvexPolygon& area, SearchParams params, std::uint64_t seed,
    int drone_id, double inertia, double attraction)
    : area_(area),
      params_(params),
      rng_(seed),
      drone_id_(drone_id),
      inertia_(inertia),
      attraction_(attraction) {
  params_.validate();
}

void AttractiveSearchController::step(DroneState& drone, Blackboard&,
                                      const users::UserPopulation& population,
                                      const std::vector<geom::Point2>& peers,
                                      double) {
  if (drone.mode == Mode::Failed) {
    drone.velocity = {0.0, 0.0};
    return;
  }
  drone.mode = Mode::Sweep;
  const long n_d = sense(population, drone.position, params_.coverage_radius_m);
  if (n_d > best_count_ && n_d > 0) {
    best_count_ = n_d;
    best_pos_ = drone.position;
    has_best_ = true;
  }

  geom::Vec2 v = drone.velocity * inertia_;
  if (has_best_) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    v = v + (best_pos_ - drone.position) * (attraction_ * u01(rng_));
  }
  geom::Vec2 dir = v.norm_sq() > 0.0 ? v.normalized()
                                     : geom::Vec2{1.0, 0.0};
  if (direction_blocked(area_, drone.position, dir, peers,
                        params_.coverage_radius_m)) {
    dir = resample_direction(area_, drone.position, peers,
                             params_.coverage_radius_m, rng_);
  }
  drone.velocity = dir * params_.speed_mps;
}

std::optional<Candidate> AttractiveSearchController::best_known() const {
  if (!has_best_) return std::nullopt;
  return Candidate{best_pos_, best_count_,
                   static_cast<std::uint64_t>(drone_id_)};
}

std::vector<Candidate> assign_deployments(
    const std::vector<std::vector<Candidate>>& options_per_drone,
    double merge_radius) {
  const int n = static_cast<int>(options_per_drone.size());

  // Group all reported options into sites: options within merge_radius
  // of each other (transitively) describe the same spot.
  struct Opt {
    int drone;
    const Candidate* c;
    int site = -1;
  };
  std::vector<Opt> opts;
  for (int d = 0; d < n; ++d) {
    for (const auto& c : options_per_drone[d]) opts.push_back({d, &c});
  }
  std::vector<int> parent(opts.size());
  for (std::size_t i = 0; i < opts.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find_root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < opts.size(); ++i) {
    for (std::size_t j = i + 1; j < opts.size(); ++j) {
      if (geom::distance(opts[i].c->location, opts[j].c->location) <
          merge_radius) {
        parent[find_root(static_cast<int>(i))] =
            find_root(static_cast<int>(j));
      }
    }
  }
  int n_sites = 0;
  std::vector<int> site_of_root(opts.size(), -1);
  for (std::size_t i = 0; i < opts.size(); ++i) {
    const int r = find_root(static_cast<int>(i));
    if (site_of_root[r] < 0) site_of_root[r] = n_sites++;
    opts[i].site = site_of_root[r];
  }

  // Per drone, the best count it reported at each site it visited;
  // only the top n sites can matter in an optimal assignment (an
  // exchange argument frees one of them otherwise).
  struct Choice {
    int site;
    const Candidate* c;
  };
  std::vector<std::vector<Choice>> menu(n);
  for (int d = 0; d < n; ++d) {
    std::vector<const Candidate*> best_at(n_sites, nullptr);
    for (const auto& o : opts) {
      if (o.drone != d) continue;
      auto*& slot = best_at[o.site];
      if (!slot || o.c->served > slot->served) slot = o.c;
    }
    for (int s = 0; s < n_sites; ++s) {
      if (best_at[s]) menu[d].push_back({s, best_at[s]});
    }
    std::stable_sort(menu[d].begin(), menu[d].end(),
                     [](const Choice& a, const Choice& b) {
                       return a.c->served > b.c->served;
                     });
    if (static_cast<int>(menu[d].size()) > n) menu[d].resize(n);
  }

  // Exhaustive assignment of drones to distinct sites; with at most n
  // choices per drone this is n^n cases at worst, tiny for small fleets.
  std::vector<int> pick(n, -1), best_pick(n, -1);
  long best_total = -1;
  std::vector<char> used(n_sites, 0);
  std::function<void(int, long)> dfs = [&](int d, long total) {
    if (d == n) {
      if (total > best_total) {
        best_total = total;
        best_pick = pick;
      }
      return;
    }
    for (int k = 0; k < static_cast<int>(menu[d].size()); ++k) {
      const auto& ch = menu[d][k];
      if (used[ch.site]) continue;
      used[ch.site] = 1;
      pick[d] = k;
      dfs(d + 1, total + ch.c->served);
      used[ch.site] = 0;
    }
    pick[d] = -1;
    dfs(d + 1, total);
    pick[d] = -1;
  };
  dfs(0, 0);

  std::vector<Candidate> out;
  for (int d = 0; d < n; ++d) {
    if (best_pick[d] >= 0) out.push_back(*menu[d][best_pick[d]].c);
  }
  return out;
}

std::vector<Candidate> select_coverage_deployments(
    const std::vector<Candidate>& options, int n_slots,
    const users::UserPopulation& population, double radius) {
  std::vector<std::vector<std::uint32_t>> covered(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) {
    population.collect_in_disk({options[i].location, radius}, covered[i]);
  }
  std::vector<char> taken(population.size(), 0);
  std::vector<char> used(options.size(), 0);
  std::vector<Candidate> picks;
  for (int slot = 0; slot < n_slots; ++slot) {
    std::size_t best = options.size();
    long best_gain = 0;
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (used[i]) continue;
      long gain = 0;
      for (const auto s : covered[i]) {
        if (!taken[s]) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == options.size()) break;
    used[best] = 1;
    for (const auto s : covered[best]) taken[s] = 1;
    picks.push_back({options[best].location, best_gain,
                     options[best].discovery_order});
  }
  return picks;
}

}  // namespace sim
}  // namespace dronesweep
