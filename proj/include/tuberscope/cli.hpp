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
#ifndef TUBERSCOPE_CLI_HPP
#define TUBERSCOPE_CLI_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tuberscope/maskpipe.hpp"
#include "tuberscope/settle.hpp"

namespace tuberscope::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // some inputs failed; the rest was written
inline constexpr int kExitConfig = 2;   // rejected before any work

struct SimulateConfig {
  std::vector<std::filesystem::path> meshes;
  std::vector<std::array<double, 3>> ellipsoids;  // semi-axes a, b, c in cm
  int subdivisions = 3;
  ConstraintMode mode = Plane{};
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double pixel_size = 0.05;
  double density = 1.0;
  std::optional<double> weight;  // rescale every mesh to this weight first
  std::filesystem::path out_dir = ".";
  unsigned threads = 0;
};

struct AnalyzeConfig {
  std::filesystem::path via;
  std::optional<double> px_per_cm;
  std::optional<std::filesystem::path> image;
  ChannelThresholds thresholds = ChannelThresholds::blue_tape();
  std::optional<double> tape_length;  // cm
  bool no_filter = false;
  std::filesystem::path out_dir = ".";
};

enum class JoinKey { Plot, Root };

struct ValidateConfig {
  std::filesystem::path observations;
  std::filesystem::path sorter;
  JoinKey join = JoinKey::Plot;
  double length_bin = 0.635;
  double width_bin = 0.635;
  double weight_bin = 56.70;
  double bin_origin = 0.0;
  std::size_t min_count = 10;
  std::filesystem::path out = "validation.csv";
};

struct BudgetConfig {
  std::filesystem::path terms;
  std::filesystem::path out = "budget.csv";
};

/// Each throws DomainError describing the first invalid parameter.
void validate(const SimulateConfig& c);
void validate(const AnalyzeConfig& c);
void validate(const ValidateConfig& c);
void validate(const BudgetConfig& c);

/// Writes <out_dir>/<source>_trials.csv per mesh and <out_dir>/summary.csv.
int run_simulate(const SimulateConfig& c, std::ostream& log);

/// Writes observations.csv, plots.csv and grades.csv under out_dir.
int run_analyze(const AnalyzeConfig& c, std::ostream& log);

/// Writes the per-metric validation report.
int run_validate(const ValidateConfig& c, std::ostream& log);

/// Writes the combined error budget.
int run_budget(const BudgetConfig& c, std::ostream& log);

inline constexpr const char* kSummaryCsvHeader = "mode,model,slope,r2,rmse_g,n";
inline constexpr const char* kValidationCsvHeader = "metric,slope,r2,rmse,n,chi2,df,p,sae";

}  // namespace tuberscope::cli

#endif  // TUBERSCOPE_CLI_HPP
