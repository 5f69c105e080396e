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
#include "tuberscope/silhouette.hpp"

#include <algorithm>
#include <cmath>

#include "tuberscope/errors.hpp"

namespace tuberscope {

Silhouette project_silhouette(const TriMesh& mesh, double pixel_size) {
  if (!(pixel_size > 0.0)) throw DomainError("pixel size must be positive");
  if (mesh.num_vertices() == 0) throw DegeneracyError("mesh has no vertices");

  const Eigen::Vector2d lo = mesh.vertices.topRows<2>().rowwise().minCoeff();
  const Eigen::Vector2d hi = mesh.vertices.topRows<2>().rowwise().maxCoeff();
  Silhouette s;
  s.pixel_size = pixel_size;
  s.origin = (lo / pixel_size).array().floor().matrix() * pixel_size;
  const auto cols = static_cast<Eigen::Index>(std::ceil((hi.x() - s.origin.x()) / pixel_size)) + 1;
  const auto rows = static_cast<Eigen::Index>(std::ceil((hi.y() - s.origin.y()) / pixel_size)) + 1;
  s.grid = BitRaster::Constant(rows, cols, false);

  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    // Pixel coordinates: pixel (r, c) has its centre at (c, r).
    Eigen::Vector2d p[3];
    for (int k = 0; k < 3; ++k)
      p[k] = (mesh.vertices.col(mesh.faces(k, f)).head<2>() - s.origin) / pixel_size -
             Eigen::Vector2d::Constant(0.5);
    double area2 = (p[1] - p[0]).x() * (p[2] - p[0]).y() - (p[1] - p[0]).y() * (p[2] - p[0]).x();
    if (std::abs(area2) < 1e-9) continue;  // edge-on, in square pixels
    if (area2 < 0.0) std::swap(p[1], p[2]);

    const double xmin = std::min({p[0].x(), p[1].x(), p[2].x()});
    const double xmax = std::max({p[0].x(), p[1].x(), p[2].x()});
    const double ymin = std::min({p[0].y(), p[1].y(), p[2].y()});
    const double ymax = std::max({p[0].y(), p[1].y(), p[2].y()});
    const auto c0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(xmin)));
    const auto c1 = std::min<Eigen::Index>(cols - 1, static_cast<Eigen::Index>(std::floor(xmax)));
    const auto r0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(ymin)));
    const auto r1 = std::min<Eigen::Index>(rows - 1, static_cast<Eigen::Index>(std::floor(ymax)));

    for (Eigen::Index r = r0; r <= r1; ++r) {
      for (Eigen::Index c = c0; c <= c1; ++c) {
        if (s.grid(r, c)) continue;
        const Eigen::Vector2d q(static_cast<double>(c), static_cast<double>(r));
        bool inside = true;
        for (int k = 0; k < 3 && inside; ++k) {
          const Eigen::Vector2d& a = p[k];
          const Eigen::Vector2d& b = p[(k + 1) % 3];
          inside = (b - a).x() * (q - a).y() - (b - a).y() * (q - a).x() >= 0.0;
        }
        if (inside) s.grid(r, c) = true;
      }
    }
  }
  if (s.grid.count() == 0) throw DegeneracyError("silhouette has no set pixels");
  return s;
}

std::vector<Point2> silhouette_outline_points(const Silhouette& s) {
  std::vector<Point2> out;
  const double ps = s.pixel_size;
  for (Eigen::Index r = 0; r < s.grid.rows(); ++r) {
    Eigen::Index first = -1, last = -1;
    for (Eigen::Index c = 0; c < s.grid.cols(); ++c) {
      if (!s.grid(r, c)) continue;
      if (first < 0) first = c;
      last = c;
    }
    if (first < 0) continue;
    const double y0 = s.origin.y() + static_cast<double>(r) * ps;
    const double xa = s.origin.x() + static_cast<double>(first) * ps;
    const double xb = s.origin.x() + static_cast<double>(last + 1) * ps;
    out.emplace_back(xa, y0);
    out.emplace_back(xa, y0 + ps);
    out.emplace_back(xb, y0);
    out.emplace_back(xb, y0 + ps);
  }
  return out;
}

}  // namespace tuberscope
