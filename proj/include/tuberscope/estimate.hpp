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
#ifndef TUBERSCOPE_ESTIMATE_HPP
#define TUBERSCOPE_ESTIMATE_HPP

#include <cmath>

#include "tuberscope/errors.hpp"
#include "tuberscope/silhouette.hpp"

namespace tuberscope {

/// Spheroid with b = c seen broadside: A = pi a b, so V = 4/3 pi a b c = 4/3 A c.
template <typename Scalar>
Scalar ellipsoid_volume(Scalar projected_area, Scalar semi_minor) {
  if (!(projected_area > Scalar(0)) || !(semi_minor > Scalar(0)))
    throw DomainError("ellipsoid model needs positive area and semi-axis");
  return Scalar(4) / Scalar(3) * projected_area * semi_minor;
}

/// V = A^(3/2).
template <typename Scalar>
Scalar square_cube_volume(Scalar projected_area) {
  using std::sqrt;
  if (!(projected_area >= Scalar(0))) throw DomainError("projected area must be non-negative");
  return projected_area * sqrt(projected_area);
}

template <typename Scalar>
Scalar weight_from_volume(Scalar volume, Scalar density = Scalar(1)) {
  if (!(density > Scalar(0))) throw DomainError("density must be positive");
  if (!(volume >= Scalar(0))) throw DomainError("volume must be non-negative");
  return volume * density;
}

/// Removes a multiplicative bias: value / bias.
template <typename Scalar>
Scalar apply_bias_correction(Scalar value, Scalar bias) {
  if (!(bias > Scalar(0))) throw DomainError("bias must be positive");
  return value / bias;
}

enum class VolumeModel { Ellipsoid, SquareCube };

struct VolumeEstimate {
  VolumeModel model = VolumeModel::Ellipsoid;
  double a_proj = 0.0;  // cm^2
  double c = 0.0;       // cm, ellipsoid model only
  double volume = 0.0;  // cm^3
  double weight = 0.0;  // g
};

/// Half the short side of the minimum-area rectangle around the silhouette,
/// taken over pixel corners. Throws DegeneracyError for an empty raster.
double semi_minor_from_silhouette(const Silhouette& s);

/// Both models evaluated on one silhouette.
struct SilhouetteEstimates {
  VolumeEstimate ellipsoid;
  VolumeEstimate square_cube;
};

SilhouetteEstimates estimate_from_silhouette(const Silhouette& s, double density = 1.0);

}  // namespace tuberscope

#endif  // TUBERSCOPE_ESTIMATE_HPP
