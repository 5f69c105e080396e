/* Copyright 2026 The Tuberscope Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "tuberscope/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tuberscope/errors.hpp"

namespace tuberscope {
namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

Point2 closest_on_segment(const Point2& a, const Point2& b, const Point2& p) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

}  // namespace

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double signed_area(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

std::vector<Point2> OrientedRect::corners() const {
  const Point2 u = axis * (0.5 * length);
  const Point2 v = Point2(-axis.y(), axis.x()) * (0.5 * width);
  return {center - u - v, center + u - v, center + u + v, center - u + v};
}

OrientedRect min_area_rect(std::span<const Point2> points) {
  const std::vector<Point2> hull = convex_hull(points);
  if (hull.size() < 3) throw DegeneracyError("points are collinear; no enclosing rectangle");
  const std::size_t n = hull.size();
  auto at = [&](std::size_t i) -> const Point2& { return hull[i % n]; };

  // Support indices for the first edge; afterwards each only moves forward.
  Point2 u = (at(1) - at(0)).normalized();
  Point2 nrm(-u.y(), u.x());
  std::size_t far = 0, hi = 0, lo = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (nrm.dot(hull[i]) > nrm.dot(hull[far])) far = i;
    if (u.dot(hull[i]) > u.dot(hull[hi])) hi = i;
    if (u.dot(hull[i]) < u.dot(hull[lo])) lo = i;
  }

  OrientedRect best;
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    u = (at(i + 1) - at(i)).normalized();
    nrm = Point2(-u.y(), u.x());
    for (std::size_t s = 0; s < n && nrm.dot(at(far + 1)) >= nrm.dot(at(far)); ++s) ++far;
    for (std::size_t s = 0; s < n && u.dot(at(hi + 1)) >= u.dot(at(hi)); ++s) ++hi;
    for (std::size_t s = 0; s < n && u.dot(at(lo + 1)) <= u.dot(at(lo)); ++s) ++lo;

    const double base = nrm.dot(at(i));
    const double height = nrm.dot(at(far)) - base;
    const double umin = u.dot(at(lo)), umax = u.dot(at(hi));
    const double span = umax - umin;
    const double area = span * height;
    if (area < best_area) {
      best_area = area;
      best.center = u * (0.5 * (umin + umax)) + nrm * (base + 0.5 * height);
      if (span >= height) {
        best.axis = u;
        best.length = span;
        best.width = height;
      } else {
        best.axis = nrm;
        best.length = height;
        best.width = span;
      }
    }
  }
  return best;
}

Point2 closest_point_on_convex(std::span<const Point2> hull, const Point2& p) {
  if (hull.empty()) throw DegeneracyError("empty polygon");
  if (hull.size() == 1) return hull[0];
  if (hull.size() == 2) return closest_on_segment(hull[0], hull[1], p);
  const std::size_t n = hull.size();
  bool inside = true;
  for (std::size_t i = 0; i < n && inside; ++i)
    inside = cross(hull[i], hull[(i + 1) % n], p) >= 0.0;
  if (inside) return p;
  Point2 best = hull[0];
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 q = closest_on_segment(hull[i], hull[(i + 1) % n], p);
    const double d2 = (q - p).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return best;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b);
  const double d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](const Point2& p, const Point2& q, const Point2& r) {
    return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
           std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
  };
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

bool is_simple_polygon(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Point2& c = ring[j];
      const Point2& d = ring[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges share one vertex; they may only overlap there.
        const Point2& shared = (j == i + 1) ? b : a;
        const Point2& other_e1 = (j == i + 1) ? a : b;
        const Point2& other_e2 = (j == i + 1) ? d : c;
        if (cross(shared, other_e1, other_e2) == 0.0 &&
            (other_e1 - shared).dot(other_e2 - shared) > 0.0)
          return false;  // folds back onto itself
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

}  // namespace tuberscope
