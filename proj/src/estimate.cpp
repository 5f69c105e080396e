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
#include "tuberscope/estimate.hpp"

namespace tuberscope {

double semi_minor_from_silhouette(const Silhouette& s) {
  if (s.grid.count() == 0) throw DegeneracyError("empty silhouette");
  const auto pts = silhouette_outline_points(s);
  return 0.5 * min_area_rect(pts).width;
}

SilhouetteEstimates estimate_from_silhouette(const Silhouette& s, double density) {
  SilhouetteEstimates out;
  const double area = silhouette_area(s);

  out.ellipsoid.model = VolumeModel::Ellipsoid;
  out.ellipsoid.a_proj = area;
  out.ellipsoid.c = semi_minor_from_silhouette(s);
  out.ellipsoid.volume = ellipsoid_volume(area, out.ellipsoid.c);
  out.ellipsoid.weight = weight_from_volume(out.ellipsoid.volume, density);

  out.square_cube.model = VolumeModel::SquareCube;
  out.square_cube.a_proj = area;
  out.square_cube.volume = square_cube_volume(area);
  out.square_cube.weight = weight_from_volume(out.square_cube.volume, density);
  return out;
}

}  // namespace tuberscope
