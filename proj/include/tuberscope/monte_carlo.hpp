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
#ifndef TUBERSCOPE_MONTE_CARLO_HPP
#define TUBERSCOPE_MONTE_CARLO_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tuberscope/mesh.hpp"
#include "tuberscope/rotation.hpp"
#include "tuberscope/settle.hpp"

namespace tuberscope {

enum class TrialStatus { Ok, Skipped };

struct TrialResult {
  std::uint64_t trial_index = 0;
  UnitQuaternion rotation;             // final pose
  double projected_area = 0.0;         // cm^2
  double est_volume_ellipsoid = 0.0;   // cm^3
  double est_volume_square_cube = 0.0; // cm^3
  double true_volume = 0.0;            // cm^3
  TrialStatus status = TrialStatus::Ok;
  std::string reason;                  // why a trial was skipped

  bool ok() const { return status == TrialStatus::Ok; }
};

struct MonteCarloOptions {
  double pixel_size = 0.05;  // cm
  double density = 1.0;      // g/cm^3
  unsigned threads = 0;      // 0: hardware concurrency (capped by TUBERSCOPE_THREADS)
};

/// One trial: rotation from the (seed, trial) counter stream, constraint,
/// projection, both volume models. Settling/projection failures yield a
/// Skipped result instead of throwing.
TrialResult run_trial(const TriMesh& mesh, double true_volume, const ConstraintMode& mode,
                      std::uint64_t seed, std::uint64_t trial_index, const MonteCarloOptions& opts);

/// Results are ordered by trial index and independent of the thread count.
std::vector<TrialResult> run_monte_carlo(const TriMesh& mesh, const ConstraintMode& mode,
                                         std::size_t n_trials, std::uint64_t seed,
                                         const MonteCarloOptions& opts = {});

inline constexpr const char* kTrialCsvHeader =
    "trial,qw,qx,qy,qz,area_cm2,vol_ellipsoid_cm3,vol_squarecube_cm3,true_vol_cm3,status";

/// Writes header and one row per trial. Skipped rows carry `skipped:<reason>`.
void write_trial_csv(std::ostream& out, const std::vector<TrialResult>& trials);

}  // namespace tuberscope

#endif  // TUBERSCOPE_MONTE_CARLO_HPP
