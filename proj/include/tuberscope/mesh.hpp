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
#ifndef TUBERSCOPE_MESH_HPP
#define TUBERSCOPE_MESH_HPP

#include <cstddef>
#include <filesystem>
#include <istream>

#include <Eigen/Core>

namespace tuberscope {

/// Closed triangle mesh in centimetres. Column j of `vertices` is vertex j;
/// column k of `faces` holds three vertex indices wound counter-clockwise
/// when seen from outside.
struct TriMesh {
  Eigen::Matrix3Xd vertices;
  Eigen::Matrix3Xi faces;

  Eigen::Index num_vertices() const { return vertices.cols(); }
  Eigen::Index num_faces() const { return faces.cols(); }
};

struct MeshSummary {
  double volume = 0.0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  /// Columns are unit axes ordered by descending extent; right-handed.
  Eigen::Matrix3d principal_axes = Eigen::Matrix3d::Identity();
  /// Max-minus-min vertex coordinate along each axis, descending.
  Eigen::Vector3d extents = Eigen::Vector3d::Zero();
};

/// Edge-manifold report. A closed, consistently oriented mesh has every
/// directed edge exactly once and its reverse exactly once.
struct ClosednessReport {
  std::size_t boundary_edges = 0;     // undirected edges used by one face
  std::size_t nonmanifold_edges = 0;  // undirected edges used by > 2 faces
  std::size_t misoriented_edges = 0;  // edges whose two uses run the same way
  bool closed() const { return boundary_edges == 0 && nonmanifold_edges == 0; }
  bool consistent() const { return closed() && misoriented_edges == 0; }
};

enum class MeshFormat { Obj, PlyAscii };

/// Parses OBJ (`v`, `f`) or ASCII PLY. Polygons are fan-triangulated and
/// vertex order is preserved. Throws ParseError on malformed records and
/// DegeneracyError when the file has no faces.
TriMesh load_mesh(std::istream& in, MeshFormat format);

/// Chooses the format from the file extension (.obj / .ply).
TriMesh load_mesh_file(const std::filesystem::path& path);

/// Throws DomainError unless the mesh has >= 4 vertices, >= 4 faces and all
/// indices in range.
void validate_mesh(const TriMesh& mesh);

/// Divergence-theorem volume, sum of v0.(v1 x v2)/6. No sign check.
double signed_volume(const TriMesh& mesh);

/// Signed volume of a validated mesh; throws DomainError when it is not
/// strictly positive (inward winding or open surface).
double mesh_volume(const TriMesh& mesh);

/// Volume centroid from the same signed-tetrahedron decomposition.
Eigen::Vector3d volume_centroid(const TriMesh& mesh);

ClosednessReport check_closed(const TriMesh& mesh);

/// Uniformly scales vertices so the volume equals weight / density.
TriMesh scale_to_weight(const TriMesh& mesh, double weight_g,
                        double density_g_cm3 = 1.0);

/// Axes from the area-weighted covariance of the surface.
MeshSummary principal_axes(const TriMesh& mesh);

/// Applies `m * v + t` to every vertex.
TriMesh transformed(const TriMesh& mesh, const Eigen::Matrix3d& m,
                    const Eigen::Vector3d& t = Eigen::Vector3d::Zero());

// Synthetic solids -----------------------------------------------------------

/// Icosahedron refined `subdivisions` times, projected to the unit sphere and
/// scaled by (a, b, c). 20 * 4^subdivisions faces.
TriMesh make_ellipsoid(double a, double b, double c, int subdivisions);

inline TriMesh make_icosphere(double radius, int subdivisions) {
  return make_ellipsoid(radius, radius, radius, subdivisions);
}

/// Axis-aligned box with one corner at the origin.
TriMesh make_box(double sx, double sy, double sz);

/// Prism along x, centred at the origin, with an elliptical cross-section of
/// semi-axes (ry, rz) sampled at `segments` points. ry == rz gives a cylinder.
TriMesh make_elliptic_prism(double ry, double rz, double length, int segments);

}  // namespace tuberscope

#endif  // TUBERSCOPE_MESH_HPP
