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
#include "tuberscope/settle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tuberscope/errors.hpp"

namespace tuberscope {

void Rollers::validate() const {
  if (!(radius > 0.0 && pitch > 2.0 * radius))
    throw DomainError("rollers need pitch > 2 * radius > 0");
}

std::string mode_name(const ConstraintMode& mode) {
  struct Visitor {
    std::string operator()(const FreeSpace&) const { return "free"; }
    std::string operator()(const Plane&) const { return "plane"; }
    std::string operator()(const Rollers&) const { return "rollers"; }
  };
  return std::visit(Visitor{}, mode);
}

double centroid_height(const TriMesh& mesh, const UnitQuaternion& q) {
  const Eigen::Matrix3d r = q.matrix();
  const Eigen::Vector3d c = r * volume_centroid(mesh);
  return c.z() - (r.row(2) * mesh.vertices).minCoeff();
}

PlaneSettleResult settle_on_plane_traced(const TriMesh& mesh, const UnitQuaternion& initial,
                                         int max_pivots) {
  validate_mesh(mesh);
  const Eigen::Vector3d body_centroid = volume_centroid(mesh);
  const double diameter =
      (mesh.vertices.rowwise().maxCoeff() - mesh.vertices.rowwise().minCoeff()).norm();
  const double contact_tol = 1e-9 * diameter;
  const double balance_tol = 1e-12 * diameter;

  PlaneSettleResult result;
  UnitQuaternion q = initial;
  std::vector<Point2> contacts;
  for (;;) {
    const Eigen::Matrix3d rot = q.matrix();
    const Eigen::Matrix3Xd v = rot * mesh.vertices;
    const Eigen::Vector3d c = rot * body_centroid;
    const double zmin = v.row(2).minCoeff();
    result.centroid_heights.push_back(c.z() - zmin);

    contacts.clear();
    for (Eigen::Index i = 0; i < v.cols(); ++i)
      if (v(2, i) - zmin <= contact_tol) contacts.emplace_back(v(0, i), v(1, i));
    const std::vector<Point2> support = convex_hull(contacts);
    const Point2 ground(c.x(), c.y());
    const Point2 nearest = closest_point_on_convex(support, ground);
    const Point2 offset = ground - nearest;
    // Inside the support polygon, or balanced exactly over an edge/vertex.
    if (offset.norm() <= balance_tol) break;

    if (result.pivots >= max_pivots)
      throw SettlingError("no resting face after " + std::to_string(max_pivots) + " pivots");

    // Tip towards the centroid about the horizontal axis through `nearest`
    // perpendicular to `dir`; points ahead of the axis descend.
    const Point2 dir2 = offset.normalized();
    const Eigen::Vector3d dir(dir2.x(), dir2.y(), 0.0);
    const Eigen::Vector3d axis = Eigen::Vector3d::UnitZ().cross(dir);
    double angle = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < v.cols(); ++i) {
      const double ahead = (v(0, i) - nearest.x()) * dir.x() + (v(1, i) - nearest.y()) * dir.y();
      if (ahead <= contact_tol) continue;
      angle = std::min(angle, std::atan2(v(2, i) - zmin, ahead));
    }
    if (!std::isfinite(angle)) throw SettlingError("no vertex ahead of the pivot");
    q = UnitQuaternion::normalized(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis)) * q.eigen());
    ++result.pivots;
  }
  result.rotation = q;
  return result;
}

namespace {

// Vertical offset needed for `section` (translated by ty) to clear the disc
// centred at (cy, 0). -inf when the section does not overhang the disc.
double disc_lift(std::span<const Point2> hull, double ty, double cy, double r) {
  double lift = -std::numeric_limits<double>::infinity();
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& s = hull[i];
    const double dx = s.x() + ty - cy;
    if (std::abs(dx) < r) lift = std::max(lift, std::sqrt(r * r - dx * dx) - s.y());

    const Point2& s1 = hull[(i + 1) % n];
    const Point2 e = s1 - s;
    const double len = e.norm();
    if (len == 0.0) continue;
    const Point2 eu = e / len;
    const Point2 normal(eu.y(), -eu.x());  // outward for a CCW hull
    if (normal.y() >= 0.0) continue;       // only the lower chain can land on a disc
    const Point2 centre(cy, 0.0);
    const double tz = (normal.dot(centre - s) - normal.x() * ty - r) / normal.y();
    const Point2 touch = centre - r * normal - Point2(ty, tz) - s;
    const double along = eu.dot(touch);
    if (along >= 0.0 && along <= len) lift = std::max(lift, tz);
  }
  return lift;
}

}  // namespace

std::optional<double> groove_rest_height(std::span<const Point2> section, const Rollers& rollers) {
  rollers.validate();
  const std::vector<Point2> hull = convex_hull(section);
  if (hull.size() < 3) throw DegeneracyError("cross-section is degenerate");

  double ymin = hull[0].x(), ymax = hull[0].x();
  Point2 lowest = hull[0];
  for (const auto& p : hull) {
    ymin = std::min(ymin, p.x());
    ymax = std::max(ymax, p.x());
    if (p.y() < lowest.y()) lowest = p;
  }
  if (ymax - ymin <= rollers.gap()) return std::nullopt;

  const double left = -0.5 * rollers.pitch, right = 0.5 * rollers.pitch;
  auto height = [&](double ty) {
    return std::max(disc_lift(hull, ty, left, rollers.radius),
                    disc_lift(hull, ty, right, rollers.radius));
  };

  // Between the two peaks the left lift is non-increasing and the right one
  // non-decreasing, so their maximum is quasi-convex there.
  double lo = left - lowest.x(), hi = right - lowest.x();
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = height(x1), f2 = height(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * rollers.pitch; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = height(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = height(x2);
    }
  }
  return std::min(f1, f2);
}

UnitQuaternion align_major_axis_to_x(const TriMesh& mesh, const UnitQuaternion& initial) {
  const TriMesh posed = rotate_mesh(mesh, initial);
  Eigen::Vector3d major = principal_axes(posed).principal_axes.col(0);
  if (major.x() < 0.0) major = -major;
  const Eigen::Quaterniond to_x =
      Eigen::Quaterniond::FromTwoVectors(major, Eigen::Vector3d::UnitX());
  return UnitQuaternion::normalized(to_x * initial.eigen());
}

std::vector<std::optional<double>> roller_height_profile(const TriMesh& mesh,
                                                         const UnitQuaternion& aligned,
                                                         const Rollers& rollers,
                                                         std::span<const double> angles) {
  const Eigen::Matrix3d r = aligned.matrix();
  const Eigen::Vector3d c = r * volume_centroid(mesh);
  const Eigen::Matrix3Xd v = r * mesh.vertices;
  std::vector<Point2> section(static_cast<std::size_t>(v.cols()));
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    section[static_cast<std::size_t>(i)] = Point2(v(1, i) - c.y(), v(2, i) - c.z());
  // A roll about x is a planar rotation of the cross-section.
  const std::vector<Point2> hull = convex_hull(section);

  std::vector<std::optional<double>> out;
  out.reserve(angles.size());
  std::vector<Point2> turned(hull.size());
  for (double theta : angles) {
    const Eigen::Rotation2Dd rot(theta);
    for (std::size_t i = 0; i < hull.size(); ++i) turned[i] = rot * hull[i];
    out.push_back(groove_rest_height(turned, rollers));
  }
  return out;
}

RollerSettleResult settle_on_rollers_detailed(const TriMesh& mesh, const UnitQuaternion& initial,
                                              const Rollers& rollers, double step_deg) {
  rollers.validate();
  if (!(step_deg > 0.0)) throw DomainError("roll step must be positive");
  const UnitQuaternion aligned = align_major_axis_to_x(mesh, initial);

  const int steps = static_cast<int>(std::lround(360.0 / step_deg));
  std::vector<double> angles(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) angles[static_cast<std::size_t>(k)] = k * step_deg * EIGEN_PI / 180.0;
  const auto heights = roller_height_profile(mesh, aligned, rollers, angles);

  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < heights.size(); ++k) {
    if (!heights[k]) continue;
    if (!best || *heights[k] < *heights[*best] - 1e-9) best = k;
  }
  if (!best) throw FallThroughError("body passes between the rollers at every roll angle");

  RollerSettleResult result;
  result.roll_angle = angles[*best];
  result.centroid_height = *heights[*best];
  const Eigen::Quaterniond roll(Eigen::AngleAxisd(result.roll_angle, Eigen::Vector3d::UnitX()));
  result.rotation = UnitQuaternion::normalized(roll * aligned.eigen());
  return result;
}

}  // namespace tuberscope
