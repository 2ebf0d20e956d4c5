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

#include "dronesweep/users.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dronesweep/kernels.hpp"

namespace dronesweep {
namespace users {

namespace {

constexpr double kPi = std::numbers::pi;

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

geom::Point2 uniform_in_disk(const geom::Point2& center, double radius,
                             std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double r = radius * std::sqrt(u01(rng));
  const double ang = 2.0 * kPi * u01(rng);
  return {center.x + r * std::cos(ang), center.y + r * std::sin(ang)};
}

}  // namespace

void PopulationSpec::validate() const {
  if (n_clusters < 0) {
    throw std::invalid_argument("PopulationSpec: n_clusters must be >= 0");
  }
  if (n_clusters > 0 && !(cluster_radius_m > 0.0)) {
    throw std::invalid_argument("PopulationSpec: cluster radius must be > 0");
  }
  if (clustered_density < 0.0 || background_density < 0.0) {
    throw std::invalid_argument("PopulationSpec: densities must be >= 0");
  }
}

std::vector<Diagnostic> validate_scenario(const PopulationSpec& spec,
                                          int n_drones,
                                          double coverage_radius) {
  std::vector<Diagnostic> out;
  char buf[256];
  if (spec.n_clusters > 0 && 2.0 * spec.cluster_radius_m > coverage_radius) {
    std::snprintf(buf, sizeof(buf),
                  "cluster diameter %.1f m exceeds coverage radius %.1f m; a "
                  "cluster may be uncoverable by a single drone",
                  2.0 * spec.cluster_radius_m, coverage_radius);
    out.push_back({Diagnostic::Severity::Error, buf});
  }
  const double area = spec.area.area();
  const double disk_area = kPi * coverage_radius * coverage_radius;
  if (area < 10.0 * n_drones * disk_area) {
    std::snprintf(buf, sizeof(buf),
                  "operating area %.3g m^2 is not large relative to total "
                  "drone coverage %.3g m^2 (ratio %.2f < 10)",
                  area, n_drones * disk_area,
                  area / (n_drones * disk_area));
    out.push_back({Diagnostic::Severity::Warning, buf});
  }
  const double expected_bg = spec.background_density * area;
  const double expected_clustered = spec.n_clusters * spec.clustered_density *
                                    kPi * spec.cluster_radius_m *
                                    spec.cluster_radius_m;
  if (expected_clustered > 0.0 && expected_bg > 0.2 * expected_clustered) {
    std::snprintf(buf, sizeof(buf),
                  "expected background users %.0f not small relative to "
                  "expected clustered users %.0f",
                  expected_bg, expected_clustered);
    out.push_back({Diagnostic::Severity::Warning, buf});
  }
  return out;
}

UserPopulation UserPopulation::generate(const PopulationSpec& spec,
                                        std::uint64_t seed,
                                        double grid_cell_m) {
  spec.validate();
  std::mt19937_64 rng(seed);

  std::vector<geom::Point2> centers;
  centers.reserve(spec.n_clusters);
  geom::Point2 lo, hi;
  spec.area.bounding_box(lo, hi);
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  for (int c = 0; c < spec.n_clusters; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const geom::Point2 p{ux(rng), uy(rng)};
      if (spec.area.contains_disk({p, spec.cluster_radius_m})) {
        centers.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error(
          "UserPopulation::generate: cluster disk does not fit in the area");
    }
  }

  std::vector<User> all;
  const double cluster_area = kPi * spec.cluster_radius_m * spec.cluster_radius_m;
  for (int c = 0; c < spec.n_clusters; ++c) {
    std::poisson_distribution<long> n_users(spec.clustered_density * cluster_area);
    const long k = n_users(rng);
    for (long i = 0; i < k; ++i) {
      all.push_back({uniform_in_disk(centers[c], spec.cluster_radius_m, rng), c});
    }
  }
  if (spec.background_density > 0.0) {
    std::poisson_distribution<long> n_bg(spec.background_density *
                                         spec.area.area());
    const long k = n_bg(rng);
    for (long i = 0; i < k; ++i) {
      all.push_back({uniform_in_polygon(spec.area, rng), -1});
    }
  }

  UserPopulation pop;
  pop.cluster_centers_ = std::move(centers);
  pop.build_index(all, grid_cell_m);
  return pop;
}

UserPopulation UserPopulation::from_users(
    std::vector<User> users, std::vector<geom::Point2> cluster_centers,
    double grid_cell_m) {
  UserPopulation pop;
  pop.cluster_centers_ = std::move(cluster_centers);
  pop.build_index(users, grid_cell_m);
  return pop;
}

void UserPopulation::build_index(const std::vector<User>& users,
                                 double grid_cell_m) {
  cell_m_ = grid_cell_m > 0.0 ? grid_cell_m : 500.0;
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  if (!users.empty()) {
    min_x = max_x = users[0].pos.x;
    min_y = max_y = users[0].pos.y;
    for (const auto& u : users) {
      min_x = std::min(min_x, u.pos.x);
      min_y = std::min(min_y, u.pos.y);
      max_x = std::max(max_x, u.pos.x);
      max_y = std::max(max_y, u.pos.y);
    }
  }
  min_x_ = min_x;
  min_y_ = min_y;
  nx_ = std::max<std::size_t>(
      1, static_cast<std::size_t>((max_x - min_x) / cell_m_) + 1);
  ny_ = std::max<std::size_t>(
      1, static_cast<std::size_t>((max_y - min_y) / cell_m_) + 1);

  const std::size_t n = users.size();
  std::vector<std::uint32_t> counts(nx_ * ny_ + 1, 0);
  std::vector<std::size_t> cell(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell[i] = cell_of(users[i].pos.x, users[i].pos.y);
    ++counts[cell[i] + 1];
  }
  for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
  cell_start_ = counts;

  xs_.resize(n);
  ys_.resize(n);
  cluster_ids_.resize(n);
  order_.resize(n);
  std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t slot = cursor[cell[i]]++;
    xs_[slot] = users[i].pos.x;
    ys_[slot] = users[i].pos.y;
    cluster_ids_[slot] = users[i].cluster_id;
    order_[slot] = static_cast<std::uint32_t>(i);
  }
}

std::size_t UserPopulation::cell_of(double x, double y) const {
  auto clamp_idx = [](double v, std::size_t n) {
    if (v < 0.0) return std::size_t{0};
    const std::size_t i = static_cast<std::size_t>(v);
    return i >= n ? n - 1 : i;
  };
  const std::size_t ix = clamp_idx((x - min_x_) / cell_m_, nx_);
  const std::size_t iy = clamp_idx((y - min_y_) / cell_m_, ny_);
  return iy * nx_ + ix;
}

long UserPopulation::count_in_disk(const geom::Disk& disk) const {
  if (xs_.empty()) return 0;
  const double r = disk.radius;
  const double r_sq = r * r;
  const double cx = disk.center.x;
  const double cy = disk.center.y;

  auto idx_range = [&](double lo_v, double hi_v, double origin,
                       std::size_t n) -> std::pair<std::size_t, std::size_t> {
    double a = (lo_v - origin) / cell_m_;
    double b = (hi_v - origin) / cell_m_;
    const std::size_t ia =
        a < 0.0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(a), n - 1);
    const std::size_t ib =
        b < 0.0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(b), n - 1);
    return {ia, ib};
  };
  const auto [ix0, ix1] = idx_range(cx - r, cx + r, min_x_, nx_);
  const auto [iy0, iy1] = idx_range(cy - r, cy + r, min_y_, ny_);

  long total = 0;
  for (std::size_t iy = iy0; iy <= iy1; ++iy) {
    const double cell_y0 = min_y_ + iy * cell_m_;
    const double cell_y1 = cell_y0 + cell_m_;
    for (std::size_t ix = ix0; ix <= ix1; ++ix) {
      const std::size_t c = iy * nx_ + ix;
      const std::uint32_t begin = cell_start_[c];
      const std::uint32_t end = cell_start_[c + 1];
      if (begin == end) continue;
      const double cell_x0 = min_x_ + ix * cell_m_;
      const double cell_x1 = cell_x0 + cell_m_;
      // Nearest and farthest points of the cell rectangle.
      const double ndx = std::max({cell_x0 - cx, 0.0, cx - cell_x1});
      const double ndy = std::max({cell_y0 - cy, 0.0, cy - cell_y1});
      if (ndx * ndx + ndy * ndy > r_sq) continue;
      const double fdx = std::max(cx - cell_x0, cell_x1 - cx);
      const double fdy = std::max(cy - cell_y0, cell_y1 - cy);
      if (fdx * fdx + fdy * fdy <= r_sq) {
        total += end - begin;  // cell fully inside the disk
        continue;
      }
      total += static_cast<long>(kernels::count_within(
          xs_.data() + begin, ys_.data() + begin, end - begin, cx, cy, r_sq));
    }
  }
  return total;
}

void UserPopulation::collect_in_disk(const geom::Disk& disk,
                                     std::vector<std::uint32_t>& out) const {
  if (xs_.empty()) return;
  const double r = disk.radius;
  const double r_sq = r * r;
  const double cx = disk.center.x;
  const double cy = disk.center.y;

  auto idx_range = [&](double lo_v, double hi_v, double origin,
                       std::size_t n) -> std::pair<std::size_t, std::size_t> {
    double a = (lo_v - origin) / cell_m_;
    double b = (hi_v - origin) / cell_m_;
    const std::size_t ia =
        a < 0.0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(a), n - 1);
    const std::size_t ib =
        b < 0.0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(b), n - 1);
    return {ia, ib};
  };
  const auto [ix0, ix1] = idx_range(cx - r, cx + r, min_x_, nx_);
  const auto [iy0, iy1] = idx_range(cy - r, cy + r, min_y_, ny_);

  for (std::size_t iy = iy0; iy <= iy1; ++iy) {
    const double cell_y0 = min_y_ + iy * cell_m_;
    const double cell_y1 = cell_y0 + cell_m_;
    for (std::size_t ix = ix0; ix <= ix1; ++ix) {
      const std::size_t c = iy * nx_ + ix;
      const std::uint32_t begin = cell_start_[c];
      const std::uint32_t end = cell_start_[c + 1];
      if (begin == end) continue;
      const double cell_x0 = min_x_ + ix * cell_m_;
      const double cell_x1 = cell_x0 + cell_m_;
      const double ndx = std::max({cell_x0 - cx, 0.0, cx - cell_x1});
      const double ndy = std::max({cell_y0 - cy, 0.0, cy - cell_y1});
      if (ndx * ndx + ndy * ndy > r_sq) continue;
      const double fdx = std::max(cx - cell_x0, cell_x1 - cx);
      const double fdy = std::max(cy - cell_y0, cell_y1 - cy);
      if (fdx * fdx + fdy * fdy <= r_sq) {
        for (std::uint32_t i = begin; i < end; ++i) out.push_back(i);
        continue;
      }
      for (std::uint32_t i = begin; i < end; ++i) {
        const double dx = xs_[i] - cx;
        const double dy = ys_[i] - cy;
        if (dx * dx + dy * dy <= r_sq) out.push_back(i);
      }
    }
  }
}

long UserPopulation::count_in_disk_brute(const geom::Disk& disk) const {
  long total = 0;
  const double r_sq = disk.radius * disk.radius;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double dx = xs_[i] - disk.center.x;
    const double dy = ys_[i] - disk.center.y;
    if (dx * dx + dy * dy <= r_sq) ++total;
  }
  return total;
}

std::vector<User> UserPopulation::users() const {
  std::vector<User> out(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    out[order_[i]] = {{xs_[i], ys_[i]}, cluster_ids_[i]};
  }
  return out;
}

void UserPopulation::export_csv(std::ostream& out) const {
  char buf[160];
  for (std::size_t c = 0; c < cluster_centers_.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "# cluster_center,%zu,%.9f,%.9f\n", c,
                  cluster_centers_[c].x, cluster_centers_[c].y);
    out << buf;
  }
  out << "x,y,cluster_id\n";
  for (const auto& u : users()) {
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f,%d\n", u.pos.x, u.pos.y,
                  u.cluster_id);
    out << buf;
  }
}

UserPopulation UserPopulation::import_csv(std::istream& in,
                                          double grid_cell_m) {
  std::vector<geom::Point2> centers;
  std::vector<User> users;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# cluster_center,", 0) == 0) {
      std::size_t idx;
      double x, y;
      if (std::sscanf(line.c_str(), "# cluster_center,%zu,%lf,%lf", &idx, &x,
                      &y) != 3) {
        throw std::runtime_error("import_csv: malformed cluster center line");
      }
      centers.push_back({x, y});
      continue;
    }
    if (line.rfind("x,y", 0) == 0 || line[0] == '#') continue;
    double x, y;
    int cid;
    if (std::sscanf(line.c_str(), "%lf,%lf,%d", &x, &y, &cid) != 3) {
      throw std::runtime_error("import_csv: malformed user line: " + line);
    }
    users.push_back({{x, y}, cid});
  }
  return from_users(std::move(users), std::move(centers), grid_cell_m);
}

std::vector<std::vector<std::uint32_t>> UserPopulation::linkage_components(
    double link_m, std::size_t min_size) const {
  const std::size_t n = xs_.size();
  std::vector<std::vector<std::uint32_t>> out;
  if (n == 0 || link_m <= 0.0) return out;

  // Bucket the users on a grid of cell size link_m so neighbor checks
  // only touch the 3x3 surrounding cells.
  double lo_x = xs_[0], lo_y = ys_[0];
  double hi_x = xs_[0], hi_y = ys_[0];
  for (std::size_t i = 1; i < n; ++i) {
    lo_x = std::min(lo_x, xs_[i]);
    hi_x = std::max(hi_x, xs_[i]);
    lo_y = std::min(lo_y, ys_[i]);
    hi_y = std::max(hi_y, ys_[i]);
  }
  const std::size_t gx =
      static_cast<std::size_t>((hi_x - lo_x) / link_m) + 1;
  const std::size_t gy =
      static_cast<std::size_t>((hi_y - lo_y) / link_m) + 1;
  auto cell = [&](std::size_t i) {
    const std::size_t cx = static_cast<std::size_t>((xs_[i] - lo_x) / link_m);
    const std::size_t cy = static_cast<std::size_t>((ys_[i] - lo_y) / link_m);
    return std::min(cy, gy - 1) * gx + std::min(cx, gx - 1);
  };
  std::vector<std::vector<std::uint32_t>> buckets(gx * gy);
  for (std::size_t i = 0; i < n; ++i) {
    buckets[cell(i)].push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<std::uint32_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double link_sq = link_m * link_m;
  for (std::size_t cy = 0; cy < gy; ++cy) {
    for (std::size_t cx = 0; cx < gx; ++cx) {
      const auto& here = buckets[cy * gx + cx];
      if (here.empty()) continue;
      for (std::size_t dy = 0; dy < 2; ++dy) {
        for (std::size_t dx = (dy == 0 ? 2 : 0); dx < 3; ++dx) {
          // Forward half of the 3x3 neighborhood (plus self below)
          // so each cell pair is visited once.
          const std::size_t ny_ = cy + dy;
          const std::size_t nx2 = cx + dx - 1;
          if (ny_ >= gy || nx2 >= gx) continue;
          const auto& there = buckets[ny_ * gx + nx2];
          for (const auto a : here) {
            for (const auto b : there) {
              const double ddx = xs_[a] - xs_[b];
              const double ddy = ys_[a] - ys_[b];
              if (ddx * ddx + ddy * ddy <= link_sq) {
                parent[find(a)] = find(b);
              }
            }
          }
        }
      }
      for (std::size_t i = 0; i < here.size(); ++i) {
        for (std::size_t j = i + 1; j < here.size(); ++j) {
          const double ddx = xs_[here[i]] - xs_[here[j]];
          const double ddy = ys_[here[i]] - ys_[here[j]];
          if (ddx * ddx + ddy * ddy <= link_sq) {
            parent[find(here[i])] = find(here[j]);
          }
        }
      }
    }
  }

  std::vector<std::vector<std::uint32_t>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_root[find(static_cast<std::uint32_t>(i))].push_back(
        static_cast<std::uint32_t>(i));
  }
  for (auto& comp : by_root) {
    if (comp.size() >= min_size) out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace users
}  // namespace dronesweep
