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
#ifndef TUBERSCOPE_GEOMETRY2D_HPP
#define TUBERSCOPE_GEOMETRY2D_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

namespace tuberscope {

using Point2 = Eigen::Vector2d;

/// Convex hull by monotone chain, counter-clockwise, collinear points dropped.
/// Returns fewer than three points when the input is degenerate.
std::vector<Point2> convex_hull(std::span<const Point2> points);

/// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(std::span<const Point2> ring);

inline double polygon_area_abs(std::span<const Point2> ring) {
  const double a = signed_area(ring);
  return a < 0.0 ? -a : a;
}

/// Rectangle with sides `length` along `axis` and `width` along its normal.
struct OrientedRect {
  Point2 center = Point2::Zero();
  Point2 axis = Point2::UnitX();  // unit, along the long side
  double length = 0.0;
  double width = 0.0;

  double area() const { return length * width; }
  /// Corners counter-clockwise.
  std::vector<Point2> corners() const;
};

/// Minimum-area enclosing rectangle via rotating calipers over the hull of
/// `points`. Throws DegeneracyError if the points are collinear.
OrientedRect min_area_rect(std::span<const Point2> points);

/// Closest point of a convex polygon (CCW, as from convex_hull) to `p`.
/// Also accepts one- and two-point "polygons".
Point2 closest_point_on_convex(std::span<const Point2> hull, const Point2& p);

/// True when two closed segments share a point.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// True when no two non-adjacent edges of the closed ring touch.
bool is_simple_polygon(std::span<const Point2> ring);

}  // namespace tuberscope

#endif  // TUBERSCOPE_GEOMETRY2D_HPP
