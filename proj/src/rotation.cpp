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
#include "tuberscope/rotation.hpp"

namespace tuberscope {

TriMesh rotate_mesh(const TriMesh& mesh, const Eigen::Quaterniond& q) {
  if (std::abs(q.squaredNorm() - 1.0) > UnitQuaternion::kNormTolerance)
    throw DomainError("rotation quaternion is not unit-norm");
  TriMesh out;
  out.vertices = q.toRotationMatrix() * mesh.vertices;
  out.faces = mesh.faces;
  return out;
}

namespace {

constexpr std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream) {
  return splitmix(splitmix(splitmix(seed) ^ counter) ^ (stream * 0xd1b54a32d192ed03ULL));
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream) {
  // 53 random bits at half-ulp offset: never exactly 0 or 1.
  const std::uint64_t bits = counter_hash(seed, counter, stream) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

RandomTriple trial_triple(std::uint64_t seed, std::uint64_t trial_index) {
  return RandomTriple(counter_uniform(seed, trial_index, 0), counter_uniform(seed, trial_index, 1),
                      counter_uniform(seed, trial_index, 2));
}

}  // namespace tuberscope
