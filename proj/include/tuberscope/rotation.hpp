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
#ifndef TUBERSCOPE_ROTATION_HPP
#define TUBERSCOPE_ROTATION_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Geometry>

#include "tuberscope/errors.hpp"
#include "tuberscope/mesh.hpp"

namespace tuberscope {

/// Three independent variates, each strictly inside (0, 1).
class RandomTriple {
 public:
  RandomTriple(double a, double b, double c) : a_(a), b_(b), c_(c) {
    if (!(inside(a) && inside(b) && inside(c)))
      throw DomainError("random triple components must lie strictly inside (0, 1)");
  }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 private:
  static bool inside(double v) { return v > 0.0 && v < 1.0; }
  double a_, b_, c_;
};

/// Rotation W + iX + jY + kZ with W^2 + X^2 + Y^2 + Z^2 = 1. Vectors rotate as
/// q v q^-1 (Hamilton convention, i^2 = j^2 = k^2 = ijk = -1).
class UnitQuaternion {
 public:
  static constexpr double kNormTolerance = 1e-9;

  UnitQuaternion() = default;

  /// Throws DomainError if the components are not unit-norm within tolerance.
  static UnitQuaternion from_components(double w, double x, double y, double z) {
    return from_eigen(Eigen::Quaterniond(w, x, y, z));
  }
  static UnitQuaternion from_eigen(const Eigen::Quaterniond& q) {
    if (std::abs(q.squaredNorm() - 1.0) > kNormTolerance)
      throw DomainError("quaternion is not unit-norm");
    UnitQuaternion out;
    out.q_ = q;
    return out;
  }
  /// Renormalises; for composing many rotations.
  static UnitQuaternion normalized(const Eigen::Quaterniond& q) {
    UnitQuaternion out;
    out.q_ = q.normalized();
    return out;
  }

  double w() const { return q_.w(); }
  double x() const { return q_.x(); }
  double y() const { return q_.y(); }
  double z() const { return q_.z(); }

  const Eigen::Quaterniond& eigen() const { return q_; }
  Eigen::Matrix3d matrix() const { return q_.toRotationMatrix(); }

  /// this * rhs: apply rhs first.
  UnitQuaternion operator*(const UnitQuaternion& rhs) const { return normalized(q_ * rhs.q_); }

 private:
  Eigen::Quaterniond q_ = Eigen::Quaterniond::Identity();
};

/// Uniform rotation from three uniform variates:
///   W = sin(2 pi A) sqrt(1 - C),  X = cos(2 pi A) sqrt(1 - C),
///   Y = sin(2 pi B) sqrt(C),      Z = cos(2 pi B) sqrt(C).
template <typename Scalar>
Eigen::Quaternion<Scalar> shoemake_quaternion(Scalar a, Scalar b, Scalar c) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  const Scalar r1 = sqrt(Scalar(1) - c);
  const Scalar r2 = sqrt(c);
  return Eigen::Quaternion<Scalar>(sin(two_pi * a) * r1, cos(two_pi * a) * r1,
                                   sin(two_pi * b) * r2, cos(two_pi * b) * r2);
}

inline UnitQuaternion shoemake_sample(const RandomTriple& t) {
  return UnitQuaternion::normalized(shoemake_quaternion(t.a(), t.b(), t.c()));
}

/// Rotates every vertex by q. Throws DomainError for non-unit q.
TriMesh rotate_mesh(const TriMesh& mesh, const Eigen::Quaterniond& q);

inline TriMesh rotate_mesh(const TriMesh& mesh, const UnitQuaternion& q) {
  return rotate_mesh(mesh, q.eigen());
}

/// Stateless generator: the value depends only on (seed, counter, stream).
/// SplitMix64 finaliser over a mixed key.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream);

/// Uniform double strictly inside (0, 1) from counter_hash.
double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream);

/// The triple used by Monte Carlo trial `trial_index`.
RandomTriple trial_triple(std::uint64_t seed, std::uint64_t trial_index);

}  // namespace tuberscope

#endif  // TUBERSCOPE_ROTATION_HPP
