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

#include "dronesweep/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace dronesweep {
namespace geom {

namespace {

constexpr double kPi = std::numbers::pi;

double length_scale(const std::vector<Point2>& verts) {
  double s = 0.0;
  for (const auto& v : verts) {
    s = std::max(s, std::max(std::abs(v.x), std::abs(v.y)));
  }
  return std::max(s, 1.0);
}

}  // namespace

Vec2 Vec2::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return {dx / n, dy / n};
}

double distance(const Point2& a, const Point2& b) { return (b - a).norm(); }

double distance_to_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Vec2 ab = b - a;
  const double len_sq = ab.norm_sq();
  if (len_sq == 0.0) return distance(p, a);
  double t = (p - a).dot(ab) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

Disk::Disk(Point2 c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw std::invalid_argument("Disk: radius must be > 0");
}

double polygon_area(const std::vector<Point2>& verts) {
  double twice = 0.0;
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = verts[i];
    const Point2& b = verts[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices)
    : verts_(std::move(vertices)) {
  if (verts_.size() < 3) {
    throw std::invalid_argument("ConvexPolygon: need >= 3 vertices");
  }
  const double scale = length_scale(verts_);
  const double eps = 1e-12 * scale * scale;
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = verts_[i];
    const Point2& b = verts_[(i + 1) % n];
    const Point2& c = verts_[(i + 2) % n];
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
      throw std::invalid_argument("ConvexPolygon: non-finite vertex");
    }
    const double cross = (b - a).cross(c - b);
    if (!(cross > eps)) {
      throw std::invalid_argument(
          "ConvexPolygon: vertices must be strictly convex and CCW");
    }
  }
  if (!(polygon_area(verts_) > 0.0)) {
    throw std::invalid_argument("ConvexPolygon: area must be > 0");
  }
}

ConvexPolygon ConvexPolygon::from_points(std::vector<Point2> points) {
  const double scale = length_scale(points);
  const double merge_eps = 1e-9 * scale;
  const double cross_eps = 1e-12 * scale * scale;

  // Merge near-duplicate consecutive vertices.
  std::vector<Point2> dedup;
  for (const auto& p : points) {
    if (dedup.empty() || distance(dedup.back(), p) > merge_eps) {
      dedup.push_back(p);
    }
  }
  while (dedup.size() > 1 && distance(dedup.front(), dedup.back()) <= merge_eps) {
    dedup.pop_back();
  }

  // Drop collinear vertices, repeating until stable.
  bool changed = true;
  while (changed && dedup.size() >= 3) {
    changed = false;
    std::vector<Point2> out;
    const std::size_t n = dedup.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& prev = dedup[(i + n - 1) % n];
      const Point2& cur = dedup[i];
      const Point2& next = dedup[(i + 1) % n];
      if (std::abs((cur - prev).cross(next - cur)) <= cross_eps) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    dedup = std::move(out);
  }
  return ConvexPolygon(std::move(dedup));
}

double ConvexPolygon::area() const { return polygon_area(verts_); }

Point2 ConvexPolygon::centroid() const {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = verts_[i];
    const Point2& q = verts_[(i + 1) % n];
    const double w = p.x * q.y - q.x * p.y;
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

bool ConvexPolygon::contains(const Point2& p) const {
  const double scale = length_scale(verts_);
  const double eps = 1e-9 * scale * scale;
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = verts_[i];
    const Point2& b = verts_[(i + 1) % n];
    if ((b - a).cross(p - a) < -eps) return false;
  }
  return true;
}

Point2 ConvexPolygon::project(const Point2& p) const {
  if (contains(p)) return p;
  double best = std::numeric_limits<double>::infinity();
  Point2 best_pt = verts_[0];
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = verts_[i];
    const Point2& b = verts_[(i + 1) % n];
    const Vec2 ab = b - a;
    double t = (p - a).dot(ab) / ab.norm_sq();
    t = std::clamp(t, 0.0, 1.0);
    const Point2 q = a + ab * t;
    const double d = distance(p, q);
    if (d < best) {
      best = d;
      best_pt = q;
    }
  }
  return best_pt;
}

double ConvexPolygon::distance_to_boundary(const Point2& p) const {
  if (!contains(p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, distance_to_segment(p, verts_[i], verts_[(i + 1) % n]));
  }
  return best;
}

bool ConvexPolygon::contains_disk(const Disk& d) const {
  if (!contains(d.center)) return false;
  return distance_to_boundary(d.center) >= d.radius;
}

void ConvexPolygon::bounding_box(Point2& lo, Point2& hi) const {
  lo = hi = verts_[0];
  for (const auto& v : verts_) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
}

double ConvexPolygon::diameter(double theta) const {
  const Vec2 u = unit(theta);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : verts_) {
    const double t = v.x * u.dx + v.y * u.dy;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

std::pair<double, double> ConvexPolygon::min_diameter() const {
  // Minimum width of a convex polygon is attained with one edge flush;
  // the width axis is that edge's normal.
  const std::size_t n = verts_.size();
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = (verts_[(i + 1) % n] - verts_[i]).normalized();
    const Vec2 normal = e.left_perp();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : verts_) {
      const double t = v.x * normal.dx + v.y * normal.dy;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    d_min = std::min(d_min, hi - lo);
  }
  // Smallest qualifying angle in [0, pi) for deterministic ties.
  double theta_opt = std::numeric_limits<double>::infinity();
  const double tol = d_min * 1e-12 + 1e-15;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = (verts_[(i + 1) % n] - verts_[i]).normalized();
    double axis = std::atan2(e.dx, -e.dy);  // normal angle
    axis = std::fmod(axis, kPi);
    if (axis < 0.0) axis += kPi;
    if (axis >= kPi) axis -= kPi;
    if (this->diameter(axis) <= d_min + tol) {
      theta_opt = std::min(theta_opt, axis);
    }
  }
  return {theta_opt, d_min};
}

std::vector<Point2> ConvexPolygon::clip_half_plane(const Vec2& n,
                                                   double offset) const {
  std::vector<Point2> out;
  const std::size_t m = verts_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = verts_[i];
    const Point2& b = verts_[(i + 1) % m];
    const double da = a.x * n.dx + a.y * n.dy - offset;
    const double db = b.x * n.dx + b.y * n.dy - offset;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + (b - a) * t);
    }
  }
  return out;
}

std::pair<ConvexPolygon, ConvexPolygon> ConvexPolygon::slice(
    double line_direction, double target_area) const {
  const double total = area();
  if (!(target_area > 0.0) || !(target_area < total)) {
    throw std::domain_error("slice: target_area out of (0, area) range");
  }
  // Right normal of the cut-line direction; "low" side is the side with
  // the smaller projection onto it.
  const Vec2 n{std::sin(line_direction), -std::cos(line_direction)};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : verts_) {
    const double t = v.x * n.dx + v.y * n.dy;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  // Area below the cut is continuous and monotone in the offset.
  auto area_below = [&](double off) {
    const auto pts = clip_half_plane(n, off);
    if (pts.size() < 3) return 0.0;
    return polygon_area(pts);
  };
  double a = lo, b = hi;
  for (int iter = 0; iter < 200 && b - a > 0.0; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (area_below(mid) < target_area) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double cut = 0.5 * (a + b);
  auto low = ConvexPolygon::from_points(clip_half_plane(n, cut));
  auto high = ConvexPolygon::from_points(clip_half_plane(-n, -cut));
  return {std::move(low), std::move(high)};
}

namespace {

Disk make_disk(const Point2& c, double r) {
  Disk d;
  d.center = c;
  d.radius = r;
  return d;
}

Disk disk_from_two(const Point2& a, const Point2& b) {
  const Point2 c{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  return make_disk(c, 0.5 * distance(a, b));
}

// Circumcircle; falls back to the two-point disk of the farthest pair
// when the points are (nearly) collinear.
Disk disk_from_three(const Point2& a, const Point2& b, const Point2& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-12) {
    Disk best = disk_from_two(a, b);
    const Disk ac = disk_from_two(a, c);
    if (ac.radius > best.radius) best = ac;
    const Disk bc = disk_from_two(b, c);
    if (bc.radius > best.radius) best = bc;
    return best;
  }
  const double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  const double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  const Point2 center{a.x + ux, a.y + uy};
  return make_disk(center, distance(center, a));
}

bool in_disk(const Disk& d, const Point2& p) {
  return distance(d.center, p) <= d.radius * (1.0 + 1e-12) + 1e-9;
}

}  // namespace

Disk min_enclosing_circle(const std::vector<Point2>& points) {
  if (points.empty()) return make_disk({0.0, 0.0}, 0.0);
  std::vector<Point2> pts = points;
  // Deterministic shuffle keeps the incremental pass expected-linear.
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = pts.size(); i > 1; --i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    std::swap(pts[i - 1], pts[(state >> 33) % i]);
  }

  Disk d = make_disk(pts[0], 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (in_disk(d, pts[i])) continue;
    d = make_disk(pts[i], 0.0);
    for (std::size_t j = 0; j < i; ++j) {
      if (in_disk(d, pts[j])) continue;
      d = disk_from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (in_disk(d, pts[k])) continue;
        d = disk_from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return d;
}

}  // namespace geom
}  // namespace dronesweep
