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
// OBJ and ASCII PLY readers.

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tuberscope/errors.hpp"
#include "tuberscope/mesh.hpp"

namespace tuberscope {
namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct MeshBuilder {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Eigen::Vector3i> faces;

  void add_polygon(const std::vector<int>& idx) {
    for (std::size_t k = 1; k + 1 < idx.size(); ++k)
      faces.emplace_back(idx[0], idx[k], idx[k + 1]);
  }

  TriMesh finish() const {
    if (faces.empty()) throw DegeneracyError("mesh has no faces");
    TriMesh mesh;
    mesh.vertices.resize(3, static_cast<Eigen::Index>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
      mesh.vertices.col(static_cast<Eigen::Index>(i)) = vertices[i];
    mesh.faces.resize(3, static_cast<Eigen::Index>(faces.size()));
    for (std::size_t i = 0; i < faces.size(); ++i)
      mesh.faces.col(static_cast<Eigen::Index>(i)) = faces[i];
    return mesh;
  }
};

TriMesh load_obj(std::istream& in) {
  MeshBuilder b;
  std::string line;
  std::size_t lineno = 0;
  std::vector<int> poly;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) throw ParseError("vertex needs three coordinates", lineno);
      Eigen::Vector3d p;
      for (int k = 0; k < 3; ++k)
        if (!parse_number(tok[k + 1], p[k]))
          throw ParseError("bad vertex coordinate '" + std::string(tok[k + 1]) + "'", lineno);
      b.vertices.push_back(p);
    } else if (tok[0] == "f") {
      if (tok.size() < 4) throw ParseError("face needs at least three vertices", lineno);
      poly.clear();
      for (std::size_t k = 1; k < tok.size(); ++k) {
        std::string_view ref = tok[k].substr(0, tok[k].find('/'));
        long idx = 0;
        if (!parse_number(ref, idx))
          throw ParseError("bad face index '" + std::string(tok[k]) + "'", lineno);
        const long n = static_cast<long>(b.vertices.size());
        if (idx < 0) idx += n + 1;  // relative reference
        if (idx < 1 || idx > n)
          throw ParseError("face index " + std::string(ref) + " out of range", lineno);
        poly.push_back(static_cast<int>(idx - 1));
      }
      b.add_polygon(poly);
    }
  }
  return b.finish();
}

struct PlyProperty {
  std::string name;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

TriMesh load_ply(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    return true;
  };

  if (!next_line() || split_ws(line).empty() || split_ws(line)[0] != "ply")
    throw ParseError("missing 'ply' magic", lineno);

  std::vector<PlyElement> elements;
  bool ascii = false;
  for (;;) {
    if (!next_line()) throw ParseError("unterminated PLY header", lineno);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "end_header") break;
    if (tok[0] == "format") {
      if (tok.size() < 2 || tok[1] != "ascii")
        throw ParseError("only ASCII PLY is supported", lineno);
      ascii = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) throw ParseError("bad element line", lineno);
      PlyElement e;
      e.name = tok[1];
      if (!parse_number(tok[2], e.count)) throw ParseError("bad element count", lineno);
      elements.push_back(std::move(e));
    } else if (tok[0] == "property") {
      if (elements.empty()) throw ParseError("property before element", lineno);
      PlyProperty p;
      if (tok.size() >= 5 && tok[1] == "list") {
        p.is_list = true;
        p.name = tok[4];
      } else if (tok.size() == 3) {
        p.name = tok[2];
      } else {
        throw ParseError("bad property line", lineno);
      }
      elements.back().properties.push_back(std::move(p));
    }
  }
  if (!ascii) throw ParseError("PLY format line missing", lineno);

  MeshBuilder b;
  std::vector<int> poly;
  for (const auto& e : elements) {
    int ix = -1, iy = -1, iz = -1, iface = -1;
    for (std::size_t k = 0; k < e.properties.size(); ++k) {
      const auto& name = e.properties[k].name;
      if (name == "x") ix = static_cast<int>(k);
      if (name == "y") iy = static_cast<int>(k);
      if (name == "z") iz = static_cast<int>(k);
      if (e.properties[k].is_list && (name == "vertex_indices" || name == "vertex_index"))
        iface = static_cast<int>(k);
    }
    if (e.name == "vertex" && (ix < 0 || iy < 0 || iz < 0))
      throw ParseError("vertex element lacks x/y/z", lineno);

    for (std::size_t r = 0; r < e.count; ++r) {
      if (!next_line()) throw ParseError("unexpected end of PLY body", lineno);
      auto tok = split_ws(line);
      std::size_t pos = 0;
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      poly.clear();
      for (std::size_t k = 0; k < e.properties.size(); ++k) {
        if (e.properties[k].is_list) {
          std::size_t n = 0;
          if (pos >= tok.size() || !parse_number(tok[pos++], n))
            throw ParseError("bad list length", lineno);
          for (std::size_t q = 0; q < n; ++q) {
            long idx = 0;
            if (pos >= tok.size() || !parse_number(tok[pos++], idx))
              throw ParseError("bad list entry", lineno);
            if (static_cast<int>(k) == iface) {
              if (idx < 0 || idx >= static_cast<long>(b.vertices.size()))
                throw ParseError("face index out of range", lineno);
              poly.push_back(static_cast<int>(idx));
            }
          }
        } else {
          double v = 0.0;
          if (pos >= tok.size() || !parse_number(tok[pos++], v))
            throw ParseError("bad scalar property", lineno);
          if (static_cast<int>(k) == ix) p.x() = v;
          if (static_cast<int>(k) == iy) p.y() = v;
          if (static_cast<int>(k) == iz) p.z() = v;
        }
      }
      if (e.name == "vertex") {
        b.vertices.push_back(p);
      } else if (e.name == "face" && iface >= 0) {
        if (poly.size() < 3) throw ParseError("face needs at least three vertices", lineno);
        b.add_polygon(poly);
      }
    }
  }
  return b.finish();
}

}  // namespace

TriMesh load_mesh(std::istream& in, MeshFormat format) {
  return format == MeshFormat::Obj ? load_obj(in) : load_ply(in);
}

TriMesh load_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file " + path.string());
  auto ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".obj") return load_mesh(in, MeshFormat::Obj);
  if (ext == ".ply") return load_mesh(in, MeshFormat::PlyAscii);
  throw Error("unrecognised mesh extension '" + ext + "' for " + path.string());
}

}  // namespace tuberscope
