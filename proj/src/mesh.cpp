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
#include "tuberscope/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tuberscope/errors.hpp"

namespace tuberscope {

void validate_mesh(const TriMesh& mesh) {
  if (mesh.num_vertices() < 4 || mesh.num_faces() < 4)
    throw DomainError("mesh needs at least 4 vertices and 4 faces");
  if (mesh.faces.minCoeff() < 0 || mesh.faces.maxCoeff() >= mesh.num_vertices())
    throw DomainError("face index out of range");
}

double signed_volume(const TriMesh& mesh) {
  double six_v = 0.0;
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    const auto v0 = mesh.vertices.col(mesh.faces(0, f));
    const auto v1 = mesh.vertices.col(mesh.faces(1, f));
    const auto v2 = mesh.vertices.col(mesh.faces(2, f));
    six_v += v0.dot(v1.cross(v2));
  }
  return six_v / 6.0;
}

double mesh_volume(const TriMesh& mesh) {
  validate_mesh(mesh);
  const double v = signed_volume(mesh);
  if (!(v > 0.0))
    throw DomainError("mesh volume is not positive; check winding and closedness");
  return v;
}

Eigen::Vector3d volume_centroid(const TriMesh& mesh) {
  validate_mesh(mesh);
  double six_v = 0.0;
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    const Eigen::Vector3d v0 = mesh.vertices.col(mesh.faces(0, f));
    const Eigen::Vector3d v1 = mesh.vertices.col(mesh.faces(1, f));
    const Eigen::Vector3d v2 = mesh.vertices.col(mesh.faces(2, f));
    const double w = v0.dot(v1.cross(v2));
    six_v += w;
    moment += w * (v0 + v1 + v2);  // tetrahedron centroid is (0+v0+v1+v2)/4
  }
  if (!(six_v > 0.0)) throw DomainError("mesh volume is not positive");
  return moment / (4.0 * six_v);
}

ClosednessReport check_closed(const TriMesh& mesh) {
  // key: (min, max) vertex pair; value: (uses, uses running min->max)
  std::map<std::pair<int, int>, std::pair<int, int>> edges;
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const int a = mesh.faces(k, f);
      const int b = mesh.faces((k + 1) % 3, f);
      auto& e = edges[{std::min(a, b), std::max(a, b)}];
      ++e.first;
      if (a < b) ++e.second;
    }
  }
  ClosednessReport r;
  for (const auto& [key, use] : edges) {
    if (use.first == 1) ++r.boundary_edges;
    if (use.first > 2) ++r.nonmanifold_edges;
    if (use.first == 2 && use.second != 1) ++r.misoriented_edges;
  }
  return r;
}

TriMesh scale_to_weight(const TriMesh& mesh, double weight_g, double density_g_cm3) {
  if (!(weight_g > 0.0)) throw DomainError("weight must be positive");
  if (!(density_g_cm3 > 0.0)) throw DomainError("density must be positive");
  const double v = mesh_volume(mesh);
  const double s = std::cbrt(weight_g / (density_g_cm3 * v));
  TriMesh out = mesh;
  out.vertices *= s;
  return out;
}

MeshSummary principal_axes(const TriMesh& mesh) {
  MeshSummary summary;
  summary.volume = mesh_volume(mesh);
  summary.centroid = volume_centroid(mesh);

  double total_area = 0.0;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    const Eigen::Vector3d v0 = mesh.vertices.col(mesh.faces(0, f));
    const Eigen::Vector3d v1 = mesh.vertices.col(mesh.faces(1, f));
    const Eigen::Vector3d v2 = mesh.vertices.col(mesh.faces(2, f));
    const double area = 0.5 * (v1 - v0).cross(v2 - v0).norm();
    const Eigen::Vector3d sum = v0 + v1 + v2;
    total_area += area;
    mean += area * sum / 3.0;
    // exact second moment of the triangle's surface
    second += area / 12.0 *
              (v0 * v0.transpose() + v1 * v1.transpose() + v2 * v2.transpose() + sum * sum.transpose());
  }
  if (!(total_area > 0.0)) throw DegeneracyError("mesh has zero surface area");
  mean /= total_area;
  Eigen::Matrix3d cov = second / total_area - mean * mean.transpose();

  // drop round-off couplings
  const double scale = cov.trace();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(cov(i, j)) < 1e-12 * scale) cov(i, j) = 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d lambda = eig.eigenvalues();  // ascending
  if (!(lambda(2) > 0.0) || lambda(1) <= 1e-12 * lambda(2))
    throw DegeneracyError("surface samples are collinear");

  Eigen::Matrix3d axes = eig.eigenvectors();
  Eigen::Vector3d extents;
  for (int k = 0; k < 3; ++k) {
    Eigen::Index imax = 0;
    axes.col(k).cwiseAbs().maxCoeff(&imax);
    if (axes(imax, k) < 0.0) axes.col(k) = -axes.col(k);
    const Eigen::RowVectorXd proj = axes.col(k).transpose() * mesh.vertices;
    extents(k) = proj.maxCoeff() - proj.minCoeff();
  }

  std::array<int, 3> order{2, 1, 0};  // largest eigenvalue first on ties
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return extents(i) > extents(j); });
  for (int k = 0; k < 3; ++k) {
    summary.principal_axes.col(k) = axes.col(order[k]);
    summary.extents(k) = extents(order[k]);
  }
  if (summary.principal_axes.determinant() < 0.0)
    summary.principal_axes.col(2) = -summary.principal_axes.col(2);
  return summary;
}

TriMesh transformed(const TriMesh& mesh, const Eigen::Matrix3d& m, const Eigen::Vector3d& t) {
  TriMesh out;
  out.vertices = (m * mesh.vertices).colwise() + t;
  out.faces = mesh.faces;
  return out;
}

TriMesh make_ellipsoid(double a, double b, double c, int subdivisions) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw DomainError("semi-axes must be positive");
  if (subdivisions < 1) throw DomainError("subdivisions must be at least 1");

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int i, int j) {
      const auto key = std::make_pair(std::min(i, j), std::max(i, j));
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      verts.push_back((verts[i] + verts[j]).normalized());
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  TriMesh mesh;
  mesh.vertices.resize(3, static_cast<Eigen::Index>(verts.size()));
  const Eigen::Vector3d scale(a, b, c);
  for (std::size_t i = 0; i < verts.size(); ++i)
    mesh.vertices.col(static_cast<Eigen::Index>(i)) = verts[i].cwiseProduct(scale);
  mesh.faces.resize(3, static_cast<Eigen::Index>(faces.size()));
  for (std::size_t i = 0; i < faces.size(); ++i)
    mesh.faces.col(static_cast<Eigen::Index>(i)) << faces[i][0], faces[i][1], faces[i][2];
  return mesh;
}

TriMesh make_box(double sx, double sy, double sz) {
  if (!(sx > 0.0 && sy > 0.0 && sz > 0.0)) throw DomainError("box sides must be positive");
  TriMesh mesh;
  mesh.vertices.resize(3, 8);
  for (int i = 0; i < 8; ++i)
    mesh.vertices.col(i) << (i & 1 ? sx : 0.0), (i & 2 ? sy : 0.0), (i & 4 ? sz : 0.0);
  mesh.faces.resize(3, 12);
  mesh.faces << 0, 0, 4, 4, 0, 0, 2, 2, 0, 0, 1, 1,
                2, 3, 5, 7, 1, 5, 6, 7, 4, 6, 3, 7,
                3, 1, 7, 6, 5, 4, 7, 3, 6, 2, 7, 5;
  return mesh;
}

TriMesh make_elliptic_prism(double ry, double rz, double length, int segments) {
  if (!(ry > 0.0 && rz > 0.0 && length > 0.0)) throw DomainError("prism sizes must be positive");
  if (segments < 3) throw DomainError("prism needs at least 3 segments");
  const int n = segments;
  TriMesh mesh;
  mesh.vertices.resize(3, 2 * n + 2);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    const double y = ry * std::cos(t), z = rz * std::sin(t);
    mesh.vertices.col(k) << -0.5 * length, y, z;
    mesh.vertices.col(n + k) << 0.5 * length, y, z;
  }
  mesh.vertices.col(2 * n) << -0.5 * length, 0.0, 0.0;
  mesh.vertices.col(2 * n + 1) << 0.5 * length, 0.0, 0.0;

  mesh.faces.resize(3, 4 * n);
  for (int k = 0; k < n; ++k) {
    const int a0 = k, b0 = (k + 1) % n, a1 = n + k, b1 = n + (k + 1) % n;
    mesh.faces.col(4 * k) << a0, b0, b1;
    mesh.faces.col(4 * k + 1) << a0, b1, a1;
    mesh.faces.col(4 * k + 2) << 2 * n + 1, a1, b1;
    mesh.faces.col(4 * k + 3) << 2 * n, b0, a0;
  }
  return mesh;
}

}  // namespace tuberscope
