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
#ifndef TUBERSCOPE_STATS_HPP
#define TUBERSCOPE_STATS_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace tuberscope {

// Regression ------------------------------------------------------------------

struct RegressionSummary {
  double slope = 0.0;
  /// 1 - SSE / SST with SST about the mean of y. Not clamped; may be negative.
  double r_squared = 0.0;
  /// Root mean squared residual about the fitted line y = slope * x.
  double rmse_unbiased = 0.0;
  std::size_t n = 0;

  bool r_squared_negative() const { return r_squared < 0.0; }
};

/// Least squares y = slope * x with the intercept fixed at zero.
/// Throws DomainError for length mismatch, n < 2 or sum x^2 == 0.
RegressionSummary regress_through_origin(std::span<const double> xs, std::span<const double> ys);

// Histograms ------------------------------------------------------------------

/// counts[k] holds values in [origin + (first_bin + k) w, origin + (first_bin + k + 1) w).
struct Histogram {
  double bin_width = 1.0;
  double origin = 0.0;
  std::int64_t first_bin = 0;
  std::vector<std::size_t> counts;

  std::size_t total() const;
  /// Count in absolute bin `bin`; zero outside the stored range.
  std::size_t at(std::int64_t bin) const;
  std::int64_t end_bin() const { return first_bin + static_cast<std::int64_t>(counts.size()); }
};

/// Bin floor((v - origin) / bin_width); values on a boundary go up.
Histogram build_histogram(std::span<const double> values, double bin_width, double origin = 0.0);

/// Sum of |count1 - count2| over the union of both ranges.
/// Throws DomainError when the binning differs.
std::size_t sum_absolute_error(const Histogram& a, const Histogram& b);

// Chi-square ------------------------------------------------------------------

struct ChiSquareResult {
  double chi2 = 0.0;
  int df = 0;
  double p = 1.0;
  std::size_t bins_discarded = 0;
};

/// Pairs where either count is below `min_count` are dropped; expected counts
/// are rescaled to the retained observed total. df = retained - 1.
/// Throws InsufficientDataError with fewer than two retained bins.
ChiSquareResult chi_square_gof(const Histogram& observed, const Histogram& expected,
                               std::size_t min_count = 10);

/// Regularised upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Power series for P when x < a + 1, Lentz continued fraction for Q otherwise.
double regularized_gamma_q(double a, double x);

/// Upper-tail probability of the chi-square distribution.
inline double chi_square_survival(double chi2, int df) {
  return regularized_gamma_q(0.5 * df, 0.5 * chi2);
}

// Error budget ----------------------------------------------------------------

enum class ErrorCategory { Imaging, Masking, Modeling };

std::string category_name(ErrorCategory c);
/// Case-insensitive; throws DomainError for unknown names.
ErrorCategory parse_category(const std::string& text);

struct ErrorTerm {
  std::string name;
  ErrorCategory category = ErrorCategory::Modeling;
  double bias = 1.0;          // proportional factor
  std::optional<double> rms;  // g
};

struct ErrorBudget {
  std::vector<ErrorTerm> terms;
  double total_bias = 1.0;
  double total_rms = 0.0;
};

/// total_bias = product of biases; total_rms = quadrature sum of present rms.
ErrorBudget combine_error_budget(std::span<const ErrorTerm> terms);

/// Fraction of a sphere's maximum projected area seen from distance D to its
/// front surface: ((D/R + 1)^2 - 1) / (D/R + 1)^2.
double solid_angle_ratio(double distance, double radius);

/// sqrt(total^2 - known^2). Throws DomainError unless total >= known >= 0.
double residual_quadrature_subtract(double total_rms, double known_rms);

inline constexpr const char* kBudgetCsvHeader = "name,category,bias,rms_g";

/// Reads `name,category,bias,rms_g` (rms may be blank). Throws DomainError
/// naming the row for non-positive bias or negative rms.
std::vector<ErrorTerm> read_error_terms(std::istream& in);

/// Echoes the terms, then `total_bias` and `total_rms` rows.
void write_budget_csv(std::ostream& out, const ErrorBudget& budget);

}  // namespace tuberscope

#endif  // TUBERSCOPE_STATS_HPP
