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
#ifndef TUBERSCOPE_TESTS_SUPPORT_HPP
#define TUBERSCOPE_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "tuberscope/geometry2d.hpp"
#include "tuberscope/rotation.hpp"

namespace tuberscope::testing {

/// Small generator wrapper for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double open01() {
    double v = 0.0;
    while (v <= 0.0 || v >= 1.0) v = uniform(0.0, 1.0);
    return v;
  }
  UnitQuaternion rotation() { return shoemake_sample(RandomTriple(open01(), open01(), open01())); }
  Point2 point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
  std::vector<Point2> points(int n, double lo, double hi) {
    std::vector<Point2> out;
    for (int i = 0; i < n; ++i) out.push_back(point(lo, hi));
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Point2> rect_polygon(Point2 center, double length, double width, double angle) {
  const Point2 u(std::cos(angle), std::sin(angle));
  const Point2 v(-u.y(), u.x());
  const Point2 hl = 0.5 * length * u, hw = 0.5 * width * v;
  return {center - hl - hw, center + hl - hw, center + hl + hw, center - hl + hw};
}

inline std::vector<Point2> circle_polygon(Point2 center, double radius, int n) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * EIGEN_PI * i / n;
    out.push_back(center + radius * Point2(std::cos(t), std::sin(t)));
  }
  return out;
}

/// Fresh scratch directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tuberscope_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace tuberscope::testing

#endif  // TUBERSCOPE_TESTS_SUPPORT_HPP
