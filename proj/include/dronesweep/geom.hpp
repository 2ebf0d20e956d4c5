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

#ifndef DRONESWEEP_GEOM_HPP
#define DRONESWEEP_GEOM_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dronesweep {
namespace geom {

struct Vec2 {
  double dx = 0.0;
  double dy = 0.0;

  Vec2() = default;
  Vec2(double dx_, double dy_) : dx(dx_), dy(dy_) {}

  Vec2 operator+(const Vec2& o) const { return {dx + o.dx, dy + o.dy}; }
  Vec2 operator-(const Vec2& o) const { return {dx - o.dx, dy - o.dy}; }
  Vec2 operator*(double s) const { return {dx * s, dy * s}; }
  Vec2 operator-() const { return {-dx, -dy}; }

  double dot(const Vec2& o) const { return dx * o.dx + dy * o.dy; }
  double cross(const Vec2& o) const { return dx * o.dy - dy * o.dx; }
  double norm() const { return std::hypot(dx, dy); }
  double norm_sq() const { return dx * dx + dy * dy; }

  // Unit vector; throws on the zero vector.
  Vec2 normalized() const;
  // 90 degree counter-clockwise rotation.
  Vec2 left_perp() const { return {-dy, dx}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Unit vector at the given angle (radians, from the +x axis).
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2() = default;
  Point2(double x_, double y_) : x(x_), y(y_) {}

  Point2 operator+(const Vec2& v) const { return {x + v.dx, y + v.dy}; }
  Vec2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
};

double distance(const Point2& a, const Point2& b);
double distance_to_segment(const Point2& p, const Point2& a, const Point2& b);

struct Disk {
  Point2 center;
  double radius = 0.0;

  Disk() = default;
  Disk(Point2 c, double r);

  // Boundary-inclusive membership.
  bool contains(const Point2& p) const {
    return (p - center).norm_sq() <= radius * radius;
  }
  bool intersects(const Disk& o) const {
    const double rr = radius + o.radius;
    return (o.center - center).norm_sq() <= rr * rr;
  }
};

// Strictly convex polygon with counter-clockwise vertex order.
//
// The constructor validates the invariants (>= 3 vertices, strict
// convexity, positive area) and throws std::invalid_argument on
// violation. Use from_points() to build from raw vertex lists that may
// contain duplicate or collinear points.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices);

  // Normalizes raw CCW boundary points (merges duplicates, drops
  // collinear vertices) before construction.
  static ConvexPolygon from_points(std::vector<Point2> points);

  const std::vector<Point2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }

  double area() const;
  Point2 centroid() const;

  // Boundary points count as inside.
  bool contains(const Point2& p) const;
  // Euclidean projection onto the polygon; identity for interior points.
  Point2 project(const Point2& p) const;
  // Distance from an interior point to the boundary (0 if outside).
  double distance_to_boundary(const Point2& p) const;

  // True when the whole disk lies inside the polygon.
  bool contains_disk(const Disk& d) const;

  void bounding_box(Point2& lo, Point2& hi) const;

  // Extent of the polygon projected onto the direction `theta`.
  // Periodic with period pi.
  double diameter(double theta) const;

  // Axis of minimum width via rotating calipers; returns
  // (theta_opt in [0, pi), d_min). Ties resolve to the smallest angle.
  std::pair<double, double> min_diameter() const;

  // Splits along a line parallel to `line_direction`, positioned so the
  // part on the low side of the right normal (sin ld, -cos ld) has
  // exactly `target_area`. Returns (low side, high side).
  std::pair<ConvexPolygon, ConvexPolygon> slice(double line_direction,
                                                double target_area) const;

  // Vertices of the part with projection onto `n` <= offset.
  std::vector<Point2> clip_half_plane(const Vec2& n, double offset) const;

 private:
  std::vector<Point2> verts_;
};

double polygon_area(const std::vector<Point2>& verts);

// Smallest disk containing every point (Welzl's incremental algorithm
// with a deterministic shuffle). Empty input yields a zero disk at the
// origin.
Disk min_enclosing_circle(const std::vector<Point2>& points);

}  // namespace geom
}  // namespace dronesweep

#endif  // DRONESWEEP_GEOM_HPP
