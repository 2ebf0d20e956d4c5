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

#include "dronesweep/sweep_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dronesweep {
namespace sweep_path {

namespace {

struct Frame {
  geom::Vec2 u;  // lap direction
  geom::Vec2 n;  // stepping axis (right normal of u)

  double s(const geom::Point2& p) const { return p.x * u.dx + p.y * u.dy; }
  double t(const geom::Point2& p) const { return p.x * n.dx + p.y * n.dy; }
};

struct Chord {
  geom::Point2 a;  // smaller s
  geom::Point2 b;  // larger s
};

// Maximal chord of the polygon at offset `off` along the stepping axis.
Chord chord_at(const geom::ConvexPolygon& poly, const Frame& f, double off) {
  const auto& v = poly.vertices();
  const std::size_t m = v.size();
  Chord c;
  double s_lo = std::numeric_limits<double>::infinity();
  double s_hi = -s_lo;
  for (std::size_t i = 0; i < m; ++i) {
    const geom::Point2& a = v[i];
    const geom::Point2& b = v[(i + 1) % m];
    const double ta = f.t(a) - off;
    const double tb = f.t(b) - off;
    auto consider = [&](const geom::Point2& p) {
      const double s = f.s(p);
      if (s < s_lo) {
        s_lo = s;
        c.a = p;
      }
      if (s > s_hi) {
        s_hi = s;
        c.b = p;
      }
    };
    if (ta == 0.0) consider(a);
    if ((ta < 0.0 && tb > 0.0) || (ta > 0.0 && tb < 0.0)) {
      consider(a + (b - a) * (ta / (ta - tb)));
    }
  }
  if (!(s_hi >= s_lo)) {
    throw std::runtime_error("chord_at: offset outside polygon");
  }
  return c;
}

double perimeter_pos(const geom::ConvexPolygon& poly, const geom::Point2& p) {
  const auto& v = poly.vertices();
  const std::size_t m = v.size();
  double best = std::numeric_limits<double>::infinity();
  double best_pos = 0.0;
  double walked = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const geom::Point2& a = v[i];
    const geom::Point2& b = v[(i + 1) % m];
    const double d = geom::distance_to_segment(p, a, b);
    if (d < best) {
      best = d;
      const geom::Vec2 ab = b - a;
      double t = (p - a).dot(ab) / ab.norm_sq();
      t = std::clamp(t, 0.0, 1.0);
      best_pos = walked + t * ab.norm();
    }
    walked += geom::distance(a, b);
  }
  return best_pos;
}

// Boundary walk from A to B, picking the perimeter direction whose
// intermediate vertices stay within the offset band [t_lo, t_hi].
std::vector<geom::Point2> boundary_walk(const geom::ConvexPolygon& poly,
                                        const Frame& f, const geom::Point2& A,
                                        const geom::Point2& B, double t_lo,
                                        double t_hi) {
  const auto& v = poly.vertices();
  const std::size_t m = v.size();
  std::vector<double> vertex_pos(m);
  double walked = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    vertex_pos[i] = walked;
    walked += geom::distance(v[i], v[(i + 1) % m]);
  }
  const double total = walked;
  const double pa = perimeter_pos(poly, A);
  const double pb = perimeter_pos(poly, B);

  const double band_eps = 1e-6 * std::max(1.0, t_hi - t_lo) + 1e-9;
  auto collect = [&](bool forward) {
    std::vector<geom::Point2> mids;
    double span = forward ? pb - pa : pa - pb;
    if (span < 0.0) span += total;
    for (std::size_t i = 0; i < m; ++i) {
      double rel = forward ? vertex_pos[i] - pa : pa - vertex_pos[i];
      if (rel < 0.0) rel += total;
      if (rel > 1e-9 && rel < span - 1e-9) {
        mids.push_back(v[i]);
      }
    }
    if (!forward) std::reverse(mids.begin(), mids.end());
    // Order along the walk.
    std::sort(mids.begin(), mids.end(), [&](const auto& x, const auto& y) {
      double rx = forward ? perimeter_pos(poly, x) - pa : pa - perimeter_pos(poly, x);
      double ry = forward ? perimeter_pos(poly, y) - pa : pa - perimeter_pos(poly, y);
      if (rx < 0.0) rx += total;
      if (ry < 0.0) ry += total;
      return rx < ry;
    });
    return mids;
  };
  auto in_band = [&](const std::vector<geom::Point2>& mids) {
    for (const auto& p : mids) {
      const double t = f.t(p);
      if (t < t_lo - band_eps || t > t_hi + band_eps) return false;
    }
    return true;
  };
  auto walk_len = [&](const std::vector<geom::Point2>& mids) {
    double len = 0.0;
    geom::Point2 prev = A;
    for (const auto& p : mids) {
      len += geom::distance(prev, p);
      prev = p;
    }
    return len + geom::distance(prev, B);
  };

  const auto fwd = collect(true);
  const auto bwd = collect(false);
  const bool fwd_ok = in_band(fwd);
  const bool bwd_ok = in_band(bwd);
  if (fwd_ok && (!bwd_ok || walk_len(fwd) <= walk_len(bwd))) return fwd;
  if (bwd_ok) return bwd;
  return {};  // fall back to the direct segment (stays inside: convexity)
}

void append(std::vector<geom::Point2>& wps, const geom::Point2& p) {
  if (!wps.empty() && geom::distance(wps.back(), p) < 1e-9) return;
  wps.push_back(p);
}

}  // namespace

ZigzagPath generate_zigzag(const geom::ConvexPolygon& area,
                           double sweep_direction, double coverage_radius,
                           double overlap) {
  if (!(coverage_radius > 0.0)) {
    throw std::invalid_argument("generate_zigzag: coverage radius must be > 0");
  }
  if (!(overlap >= 0.0 && overlap < 1.0)) {
    throw std::invalid_argument("generate_zigzag: overlap must be in [0,1)");
  }
  Frame f;
  f.u = geom::unit(sweep_direction);
  f.n = {f.u.dy, -f.u.dx};

  double t_min = std::numeric_limits<double>::infinity();
  double t_max = -t_min;
  for (const auto& v : area.vertices()) {
    t_min = std::min(t_min, f.t(v));
    t_max = std::max(t_max, f.t(v));
  }
  const double extent = t_max - t_min;
  const double reach = coverage_radius * (1.0 - overlap);
  const double spacing = 2.0 * reach;

  const std::size_t lap_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(extent / spacing - 1e-12)));

  std::vector<double> offsets(lap_count);
  const double mid = 0.5 * (t_min + t_max);
  offsets[0] = std::min(t_min + reach, mid);
  for (std::size_t i = 1; i < lap_count; ++i) {
    offsets[i] = offsets[0] + static_cast<double>(i) * spacing;
  }
  if (lap_count > 1) {
    // Pull the last lap in so its covered band reaches the far boundary.
    offsets[lap_count - 1] =
        std::min(offsets[lap_count - 1], t_max - reach);
  }

  std::vector<Chord> chords(lap_count);
  for (std::size_t i = 0; i < lap_count; ++i) {
    chords[i] = chord_at(area, f, offsets[i]);
  }

  ZigzagPath path;
  path.lap_spacing = spacing;
  path.sweep_direction = sweep_direction;
  path.lap_count = lap_count;
  path.lap_offsets = offsets;

  auto& wps = path.waypoints;
  for (std::size_t i = 0; i < lap_count; ++i) {
    const bool ascending = (i % 2 == 0);
    const geom::Point2 start = ascending ? chords[i].a : chords[i].b;
    const geom::Point2 end = ascending ? chords[i].b : chords[i].a;
    if (i > 0) {
      const auto mids = boundary_walk(area, f, wps.back(), start,
                                      offsets[i - 1], offsets[i]);
      for (const auto& p : mids) append(wps, p);
    }
    append(wps, start);
    append(wps, end);
    path.lap_end_index.push_back(wps.size() - 1);
  }
  if (wps.size() == 1) wps.push_back(wps[0]);

  // Pockets can survive beyond chord endpoints where the boundary slants
  // relative to the lap direction (the transition walks only cover every
  // other inter-lap stretch of each side chain). Repair: sample the
  // boundary densely and push an out-and-back boundary detour through the
  // deepest point of every stretch left uncovered, until none remain.
  const auto& verts = area.vertices();
  const std::size_t nv = verts.size();
  const double sample_step = std::max(coverage_radius / 50.0, 1e-6);
  const double inf = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 16; ++pass) {
    auto dist_to_path = [&](const geom::Point2& p) {
      double best = inf;
      for (std::size_t i = 0; i + 1 < wps.size(); ++i) {
        best = std::min(best,
                        geom::distance_to_segment(p, wps[i], wps[i + 1]));
      }
      return best;
    };
    geom::Point2 deepest = verts[0];
    double worst = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
      const geom::Point2& a = verts[i];
      const geom::Point2& b = verts[(i + 1) % nv];
      const double len = geom::distance(a, b);
      const int k_max =
          std::max(1, static_cast<int>(std::ceil(len / sample_step)));
      auto at = [&](double tau) { return a + (b - a) * tau; };
      std::vector<double> d(static_cast<std::size_t>(k_max) + 1);
      for (int k = 0; k <= k_max; ++k) {
        d[k] = dist_to_path(at(static_cast<double>(k) / k_max));
      }
      // Refine each local maximum so a depth check against the exact
      // coverage radius is meaningful.
      for (int k = 0; k <= k_max; ++k) {
        const bool local_max = (k == 0 || d[k] >= d[k - 1]) &&
                               (k == k_max || d[k] >= d[k + 1]);
        if (!local_max || d[k] + sample_step <= worst) continue;
        double lo = std::max(0.0, (k - 1.0) / k_max);
        double hi = std::min(1.0, (k + 1.0) / k_max);
        for (int it = 0; it < 40; ++it) {
          const double m1 = lo + (hi - lo) / 3.0;
          const double m2 = hi - (hi - lo) / 3.0;
          if (dist_to_path(at(m1)) < dist_to_path(at(m2))) {
            lo = m1;
          } else {
            hi = m2;
          }
        }
        const double tau = 0.5 * (lo + hi);
        const double depth = dist_to_path(at(tau));
        if (depth > worst) {
          worst = depth;
          deepest = at(tau);
        }
      }
    }
    if (worst <= coverage_radius + 1e-9) break;

    // Out-and-back boundary detour from the nearest waypoint through the
    // deepest uncovered point.
    std::size_t at = 0;
    double nearest = inf;
    for (std::size_t i = 0; i < wps.size(); ++i) {
      const double d = geom::distance(wps[i], deepest);
      if (d < nearest) {
        nearest = d;
        at = i;
      }
    }
    const auto out = boundary_walk(area, f, wps[at], deepest, -inf, inf);
    std::vector<geom::Point2> spur;
    for (const auto& p : out) spur.push_back(p);
    spur.push_back(deepest);
    for (std::size_t k = out.size(); k-- > 0;) spur.push_back(out[k]);
    spur.push_back(wps[at]);
    wps.insert(wps.begin() + static_cast<long>(at) + 1, spur.begin(),
               spur.end());
    for (auto& e : path.lap_end_index) {
      if (e > at) e += spur.size();
    }
  }

  return path;
}

double path_length(const ZigzagPath& path) {
  if (path.waypoints.size() < 2) {
    throw std::invalid_argument("path_length: need >= 2 waypoints");
  }
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    len += geom::distance(path.waypoints[i], path.waypoints[i + 1]);
  }
  return len;
}

}  // namespace sweep_path
}  // namespace dronesweep
