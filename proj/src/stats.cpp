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
#include "tuberscope/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "tuberscope/errors.hpp"
#include "tuberscope/format.hpp"

namespace tuberscope {

RegressionSummary regress_through_origin(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("regression inputs differ in length");
  if (xs.size() < 2) throw DomainError("regression needs at least two points");
  const std::size_t n = xs.size();
  double sxx = 0.0, sxy = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    ybar += ys[i];
  }
  if (!(sxx > 0.0)) throw DomainError("regression x values are all zero");
  ybar /= static_cast<double>(n);

  RegressionSummary r;
  r.n = n;
  r.slope = sxy / sxx;
  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ys[i] - r.slope * xs[i];
    sse += e * e;
    sst += (ys[i] - ybar) * (ys[i] - ybar);
  }
  r.rmse_unbiased = std::sqrt(sse / static_cast<double>(n));
  if (sst > 0.0)
    r.r_squared = 1.0 - sse / sst;
  else
    r.r_squared = sse == 0.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
  return r;
}

std::size_t Histogram::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::size_t Histogram::at(std::int64_t bin) const {
  if (bin < first_bin || bin >= end_bin()) return 0;
  return counts[static_cast<std::size_t>(bin - first_bin)];
}

Histogram build_histogram(std::span<const double> values, double bin_width, double origin) {
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  h.origin = origin;
  if (values.empty()) return h;
  std::vector<std::int64_t> bins;
  bins.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("histogram value is not finite");
    bins.push_back(static_cast<std::int64_t>(std::floor((v - origin) / bin_width)));
  }
  const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
  h.first_bin = *lo;
  h.counts.assign(static_cast<std::size_t>(*hi - *lo + 1), 0);
  for (auto b : bins) ++h.counts[static_cast<std::size_t>(b - h.first_bin)];
  return h;
}

namespace {

void require_same_binning(const Histogram& a, const Histogram& b) {
  const double scale = std::max(std::abs(a.bin_width), std::abs(b.bin_width));
  if (std::abs(a.bin_width - b.bin_width) > 1e-12 * scale ||
      std::abs(a.origin - b.origin) > 1e-12 * std::max(scale, std::abs(a.origin)))
    throw DomainError("histograms use different binning");
}

std::pair<std::int64_t, std::int64_t> union_range(const Histogram& a, const Histogram& b) {
  if (a.counts.empty() && b.counts.empty()) return {0, 0};
  if (a.counts.empty()) return {b.first_bin, b.end_bin()};
  if (b.counts.empty()) return {a.first_bin, a.end_bin()};
  return {std::min(a.first_bin, b.first_bin), std::max(a.end_bin(), b.end_bin())};
}

}  // namespace

std::size_t sum_absolute_error(const Histogram& a, const Histogram& b) {
  require_same_binning(a, b);
  const auto [lo, hi] = union_range(a, b);
  std::size_t sae = 0;
  for (auto k = lo; k < hi; ++k) {
    const auto x = a.at(k), y = b.at(k);
    sae += x > y ? x - y : y - x;
  }
  return sae;
}

ChiSquareResult chi_square_gof(const Histogram& observed, const Histogram& expected,
                               std::size_t min_count) {
  require_same_binning(observed, expected);
  const auto [lo, hi] = union_range(observed, expected);
  std::vector<double> obs, exp;
  ChiSquareResult r;
  for (auto k = lo; k < hi; ++k) {
    const auto o = observed.at(k), e = expected.at(k);
    if (o == 0 && e == 0) continue;  // padding, not a bin pair
    if (o < min_count || e < min_count || e == 0) {
      ++r.bins_discarded;
      continue;
    }
    obs.push_back(static_cast<double>(o));
    exp.push_back(static_cast<double>(e));
  }
  if (obs.size() < 2)
    throw InsufficientDataError("chi-square needs at least two retained bins, have " +
                                std::to_string(obs.size()));
  double so = 0.0, se = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    so += obs[i];
    se += exp[i];
  }
  const double scale = so / se;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double e = exp[i] * scale;
    r.chi2 += (obs[i] - e) * (obs[i] - e) / e;
  }
  r.df = static_cast<int>(obs.size()) - 1;
  r.p = chi_square_survival(r.chi2, r.df);
  return r;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma shape must be positive");
  if (!(x >= 0.0)) throw DomainError("gamma argument must be non-negative");
  if (x == 0.0) return 1.0;
  const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;

  if (x < a + 1.0) {
    // P(a, x) = x^a e^-x / Gamma(a + 1) * sum_n x^n / ((a + 1) ... (a + n))
    double term = 1.0 / a, sum = term, ap = a;
    for (int n = 0; n < max_iter; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return std::clamp(1.0 - sum * std::exp(log_prefactor), 0.0, 1.0);
  }

  // Q(a, x) = x^a e^-x / Gamma(a) * 1 / (x + 1 - a - 1(1 - a) / (x + 3 - a - ...))
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return std::clamp(std::exp(log_prefactor) * h, 0.0, 1.0);
}

std::string category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Imaging: return "Imaging";
    case ErrorCategory::Masking: return "Masking";
    case ErrorCategory::Modeling: return "Modeling";
  }
  return "Modeling";
}

ErrorCategory parse_category(const std::string& text) {
  std::string t = trim(text);
  for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "imaging") return ErrorCategory::Imaging;
  if (t == "masking") return ErrorCategory::Masking;
  if (t == "modeling" || t == "modelling") return ErrorCategory::Modeling;
  throw DomainError("unknown error category '" + text + "'");
}

ErrorBudget combine_error_budget(std::span<const ErrorTerm> terms) {
  ErrorBudget b;
  b.terms.assign(terms.begin(), terms.end());
  double sum_sq = 0.0;
  for (const auto& t : terms) {
    if (!(t.bias > 0.0)) throw DomainError("error term '" + t.name + "' has non-positive bias");
    if (t.rms && !(*t.rms >= 0.0))
      throw DomainError("error term '" + t.name + "' has negative rms");
    b.total_bias *= t.bias;
    if (t.rms) sum_sq += *t.rms * *t.rms;
  }
  b.total_rms = std::sqrt(sum_sq);
  return b;
}

double solid_angle_ratio(double distance, double radius) {
  if (!(distance > 0.0) || !(radius > 0.0))
    throw DomainError("distance and radius must be positive");
  const double k = distance / radius + 1.0;
  return 1.0 - 1.0 / (k * k);
}

double residual_quadrature_subtract(double total_rms, double known_rms) {
  if (!(known_rms >= 0.0)) throw DomainError("known rms must be non-negative");
  if (!(total_rms >= known_rms)) throw DomainError("known rms exceeds total; budget is inconsistent");
  return std::sqrt((total_rms - known_rms) * (total_rms + known_rms));
}

std::vector<ErrorTerm> read_error_terms(std::istream& in) {
  const CsvTable table = read_csv(in);
  const auto c_name = table.column("name");
  const auto c_cat = table.column("category");
  const auto c_bias = table.column("bias");
  const auto c_rms = table.column("rms_g");
  std::vector<ErrorTerm> terms;
  for (const auto& row : table.rows) {
    auto cell = [&](std::size_t c) { return c < row.cells.size() ? row.cells[c] : std::string(); };
    ErrorTerm t;
    t.name = cell(c_name);
    const std::string where = "row '" + t.name + "' (line " + std::to_string(row.line) + ")";
    try {
      t.category = parse_category(cell(c_cat));
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " in " + where);
    }
    const auto bias = parse_double(cell(c_bias));
    if (!bias) throw DomainError("bias is not a number in " + where);
    if (!(*bias > 0.0)) throw DomainError("bias must be positive in " + where);
    t.bias = *bias;
    if (!trim(cell(c_rms)).empty()) {
      const auto rms = parse_double(cell(c_rms));
      if (!rms || *rms < 0.0) throw DomainError("rms_g must be a non-negative number in " + where);
      t.rms = *rms;
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

void write_budget_csv(std::ostream& out, const ErrorBudget& budget) {
  out << kBudgetCsvHeader << '\n';
  for (const auto& t : budget.terms) {
    out << csv_safe(t.name) << ',' << category_name(t.category) << ',' << fmt_num(t.bias) << ','
        << (t.rms ? fmt_num(*t.rms) : std::string()) << '\n';
  }
  out << "total_bias,Total," << fmt_num(budget.total_bias) << ",\n";
  out << "total_rms,Total,," << fmt_num(budget.total_rms) << '\n';
}

}  // namespace tuberscope
