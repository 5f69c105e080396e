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
#ifndef TUBERSCOPE_SETTLE_HPP
#define TUBERSCOPE_SETTLE_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tuberscope/geometry2d.hpp"
#include "tuberscope/mesh.hpp"
#include "tuberscope/rotation.hpp"

namespace tuberscope {

struct FreeSpace {};
struct Plane {};

/// Parallel cylinders along x, centres at y = +-pitch/2 and z = 0. Only the
/// two rollers flanking the groove at y = 0 carry the body.
struct Rollers {
  double pitch = 7.62;
  double radius = 2.54;

  double gap() const { return pitch - 2.0 * radius; }
  /// Throws DomainError unless pitch > 2 * radius > 0.
  void validate() const;
};

using ConstraintMode = std::variant<FreeSpace, Plane, Rollers>;

std::string mode_name(const ConstraintMode& mode);

struct PlaneSettleResult {
  UnitQuaternion rotation;
  /// Centroid height above the support before each pivot and at rest.
  std::vector<double> centroid_heights;
  int pivots = 0;
};

/// Quasi-static tumbling on z = 0. Starting from `initial`, the body pivots
/// about the support-polygon feature nearest the centroid's ground projection
/// until that projection falls inside the support polygon. Throws
/// SettlingError after `max_pivots` pivots.
PlaneSettleResult settle_on_plane_traced(const TriMesh& mesh, const UnitQuaternion& initial,
                                         int max_pivots = 1000);

inline UnitQuaternion settle_on_plane(const TriMesh& mesh, const UnitQuaternion& initial) {
  return settle_on_plane_traced(mesh, initial).rotation;
}

/// Height of the centroid above the lowest vertex after rotating by q.
double centroid_height(const TriMesh& mesh, const UnitQuaternion& q);

struct RollerSettleResult {
  UnitQuaternion rotation;
  double roll_angle = 0.0;  // radians, about +x, relative to the aligned pose
  double centroid_height = 0.0;
};

/// Lowest centroid height of a body whose cross-section (points relative to
/// the centroid, y horizontal, z up) rests in the groove between two rollers.
/// Empty when the section is no wider than the gap.
std::optional<double> groove_rest_height(std::span<const Point2> section, const Rollers& rollers);

/// Rotation that takes the mesh's major principal axis to +-x after applying
/// `initial`.
UnitQuaternion align_major_axis_to_x(const TriMesh& mesh, const UnitQuaternion& initial);

/// Centroid height in the groove for each roll angle (radians) about x,
/// applied after `aligned`.
std::vector<std::optional<double>> roller_height_profile(const TriMesh& mesh,
                                                         const UnitQuaternion& aligned,
                                                         const Rollers& rollers,
                                                         std::span<const double> angles);

/// Aligns the major axis with the rollers, then scans the roll angle over a
/// full turn at `step_deg` and keeps the lowest centroid (ties go to the
/// smaller angle). Throws FallThroughError when no angle is supported.
RollerSettleResult settle_on_rollers_detailed(const TriMesh& mesh, const UnitQuaternion& initial,
                                              const Rollers& rollers, double step_deg = 0.5);

inline UnitQuaternion settle_on_rollers(const TriMesh& mesh, const UnitQuaternion& initial,
                                        const Rollers& rollers) {
  return settle_on_rollers_detailed(mesh, initial, rollers).rotation;
}

}  // namespace tuberscope

#endif  // TUBERSCOPE_SETTLE_HPP
