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
#ifndef TUBERSCOPE_SILHOUETTE_HPP
#define TUBERSCOPE_SILHOUETTE_HPP

#include <vector>

#include <Eigen/Core>

#include "tuberscope/geometry2d.hpp"
#include "tuberscope/mesh.hpp"

namespace tuberscope {

using BitRaster = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Orthographic top-down shadow. grid(row, col) covers the square
/// [origin.x + col * pixel_size, +pixel_size) x [origin.y + row * pixel_size, +pixel_size).
struct Silhouette {
  BitRaster grid;
  double pixel_size = 0.05;
  Point2 origin = Point2::Zero();

  Eigen::Index set_pixels() const { return grid.count(); }
};

/// Projects all faces along -z onto the xy-plane. A pixel is set iff its
/// centre lies inside (or on the edge of) a projected triangle. Throws
/// DomainError for pixel_size <= 0 and DegeneracyError when nothing is set.
Silhouette project_silhouette(const TriMesh& mesh, double pixel_size);

/// set pixels * pixel_size^2.
inline double silhouette_area(const Silhouette& s) {
  return static_cast<double>(s.grid.count()) * s.pixel_size * s.pixel_size;
}

/// Corners of the first and last set pixel in every row, in cm. Their hull
/// equals the hull of the whole silhouette.
std::vector<Point2> silhouette_outline_points(const Silhouette& s);

}  // namespace tuberscope

#endif  // TUBERSCOPE_SILHOUETTE_HPP
