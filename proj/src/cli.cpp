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
#include "tuberscope/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tuberscope/errors.hpp"
#include "tuberscope/estimate.hpp"
#include "tuberscope/format.hpp"
#include "tuberscope/image.hpp"
#include "tuberscope/mesh.hpp"
#include "tuberscope/monte_carlo.hpp"
#include "tuberscope/stats.hpp"

namespace tuberscope::cli {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::string simulate_header(const SimulateConfig& c) {
  std::ostringstream h;
  h << "# tuberscope simulate mode=" << mode_name(c.mode) << " trials=" << c.trials
    << " seed=" << c.seed << " pixel_size_cm=" << fmt_num(c.pixel_size)
    << " density_g_cm3=" << fmt_num(c.density) << " subdivisions=" << c.subdivisions;
  if (const auto* r = std::get_if<Rollers>(&c.mode))
    h << " roller_pitch_cm=" << fmt_num(r->pitch) << " roller_radius_cm=" << fmt_num(r->radius);
  if (c.weight) h << " weight_g=" << fmt_num(*c.weight);
  h << '\n';
  return h.str();
}

std::string ellipsoid_name(const std::array<double, 3>& e) {
  return "ellipsoid_" + fmt_num(e[0]) + "x" + fmt_num(e[1]) + "x" + fmt_num(e[2]);
}

}  // namespace

void validate(const SimulateConfig& c) {
  if (c.meshes.empty() && c.ellipsoids.empty())
    throw DomainError("simulate needs --mesh or --ellipsoid");
  for (const auto& e : c.ellipsoids)
    if (!(e[0] > 0.0 && e[1] > 0.0 && e[2] > 0.0))
      throw DomainError("--ellipsoid semi-axes must be positive");
  if (c.subdivisions < 1) throw DomainError("--subdivisions must be at least 1");
  if (!(c.pixel_size > 0.0)) throw DomainError("--pixel-size must be positive");
  if (!(c.density > 0.0)) throw DomainError("--density must be positive");
  if (c.weight && !(*c.weight > 0.0)) throw DomainError("--weight must be positive");
  if (const auto* r = std::get_if<Rollers>(&c.mode)) r->validate();
}

void validate(const AnalyzeConfig& c) {
  if (c.via.empty()) throw DomainError("analyze needs --via");
  if (c.px_per_cm) {
    if (!(*c.px_per_cm > 0.0)) throw DomainError("--px-per-cm must be positive");
  } else {
    if (!c.image) throw DomainError("no calibration: give --px-per-cm or --image with --tape-length");
    if (!c.tape_length) throw DomainError("--image calibration needs --tape-length");
    if (!(*c.tape_length > 0.0)) throw DomainError("--tape-length must be positive");
  }
  for (int k = 0; k < 3; ++k)
    if (c.thresholds.min[k] > c.thresholds.max[k])
      throw DomainError("threshold minimum exceeds maximum");
}

void validate(const ValidateConfig& c) {
  if (c.observations.empty() || c.sorter.empty())
    throw DomainError("validate needs --observations and --sorter");
  if (!(c.length_bin > 0.0 && c.width_bin > 0.0 && c.weight_bin > 0.0))
    throw DomainError("bin widths must be positive");
}

void validate(const BudgetConfig& c) {
  if (c.terms.empty()) throw DomainError("budget needs --terms");
}

int run_simulate(const SimulateConfig& c, std::ostream& log) {
  validate(c);
  std::filesystem::create_directories(c.out_dir);
  const std::string header = simulate_header(c);

  struct Source {
    std::string name;
    std::optional<std::filesystem::path> path;
    std::array<double, 3> semi_axes{};
  };
  std::vector<Source> sources;
  for (const auto& p : c.meshes) sources.push_back({p.stem().string(), p, {}});
  for (const auto& e : c.ellipsoids) sources.push_back({ellipsoid_name(e), std::nullopt, e});

  MonteCarloOptions opts;
  opts.pixel_size = c.pixel_size;
  opts.density = c.density;
  opts.threads = c.threads;

  int status = kExitOk;
  std::vector<double> truth, est_ellipsoid, est_square_cube;
  for (const auto& src : sources) {
    try {
      TriMesh mesh = src.path ? load_mesh_file(*src.path)
                              : make_ellipsoid(src.semi_axes[0], src.semi_axes[1],
                                               src.semi_axes[2], c.subdivisions);
      if (c.weight) mesh = scale_to_weight(mesh, *c.weight, c.density);
      const ClosednessReport closed = check_closed(mesh);
      if (!closed.consistent())
        log << "warning: " << src.name << " is not closed and consistently oriented ("
            << closed.boundary_edges << " boundary, " << closed.nonmanifold_edges
            << " non-manifold, " << closed.misoriented_edges << " misoriented edges)\n";

      const auto trials = run_monte_carlo(mesh, c.mode, c.trials, c.seed, opts);
      auto out = open_out(c.out_dir / (src.name + "_trials.csv"));
      out << header;
      write_trial_csv(out, trials);

      std::size_t skipped = 0;
      for (const auto& t : trials) {
        if (!t.ok()) {
          ++skipped;
          continue;
        }
        truth.push_back(weight_from_volume(t.true_volume, c.density));
        est_ellipsoid.push_back(weight_from_volume(t.est_volume_ellipsoid, c.density));
        est_square_cube.push_back(weight_from_volume(t.est_volume_square_cube, c.density));
      }
      log << src.name << ": " << trials.size() - skipped << " trials";
      if (skipped) log << ", " << skipped << " skipped";
      log << '\n';
    } catch (const std::exception& e) {
      log << "error: " << src.name << ": " << e.what() << '\n';
      status = kExitFailure;
    }
  }

  auto summary = open_out(c.out_dir / "summary.csv");
  summary << header;
  if (truth.size() < 2) {
    summary << "# insufficient data: " << truth.size()
            << " successful trials; regression needs at least 2\n";
    summary << kSummaryCsvHeader << '\n';
    log << "summary: insufficient data for regression\n";
    return status;
  }
  summary << kSummaryCsvHeader << '\n';
  const std::string mode = mode_name(c.mode);
  for (const auto& [model, ys] : {std::pair{"ellipsoid", &est_ellipsoid},
                                  std::pair{"square_cube", &est_square_cube}}) {
    const RegressionSummary r = regress_through_origin(truth, *ys);
    summary << mode << ',' << model << ',' << fmt_num(r.slope) << ',' << fmt_num(r.r_squared)
            << ',' << fmt_num(r.rmse_unbiased) << ',' << r.n << '\n';
  }
  return status;
}

int run_analyze(const AnalyzeConfig& c, std::ostream& log) {
  validate(c);

  CalibrationFactor cal;
  std::ostringstream header;
  header << "# tuberscope analyze";
  if (c.px_per_cm) {
    cal = CalibrationFactor::from_px_per_cm(*c.px_per_cm);
    header << " px_per_cm=" << fmt_num(cal.px_per_cm) << " calibration=explicit";
  } else {
    const TapeDetection det = detect_tape(load_image(*c.image), c.thresholds, *c.tape_length);
    cal = det.factor;
    header << " px_per_cm=" << fmt_num(cal.px_per_cm) << " calibration=tape tape_length_cm="
           << fmt_num(*c.tape_length) << " thresholds=" << int(c.thresholds.min[0]) << '-'
           << int(c.thresholds.max[0]) << ',' << int(c.thresholds.min[1]) << '-'
           << int(c.thresholds.max[1]) << ',' << int(c.thresholds.min[2]) << '-'
           << int(c.thresholds.max[2]);
    log << "tape: " << det.component_pixels << " px, " << fmt_num(det.rect.length) << " x "
        << fmt_num(det.rect.width) << " px -> " << fmt_num(cal.px_per_cm) << " px/cm\n";
  }
  header << " filter=" << (c.no_filter ? "off" : "sorter_minimums") << " min_width_cm="
         << fmt_num(kSorterMinWidth) << " min_length_cm=" << fmt_num(kSorterMinLength) << '\n';

  auto in = open_in(c.via);
  const ViaAnnotations via = parse_via_annotations(in);
  if (via.skipped_regions) log << "skipped " << via.skipped_regions << " non-polygon regions\n";

  int status = kExitOk;
  std::vector<RootObservation> all;
  std::set<std::string> plots_seen;
  for (const auto& [id, image] : via.images) {
    plots_seen.insert(image.plot_id);
    for (const auto& mask : image.masks) {
      try {
        all.push_back(mask_metrics(mask, cal, image.plot_id));
      } catch (const Error& e) {
        log << "error: " << mask.region_id << ": " << e.what() << '\n';
        status = kExitFailure;
      }
    }
  }
  const std::vector<RootObservation> obs = c.no_filter ? all : filter_sorter_minimums(all);
  if (!c.no_filter && obs.size() != all.size())
    log << "filtered " << all.size() - obs.size() << " roots below sorter minimums\n";

  std::filesystem::create_directories(c.out_dir);
  {
    auto out = open_out(c.out_dir / "observations.csv");
    out << header.str();
    write_observation_csv(out, obs);
  }

  const PlotAggregation agg = aggregate_plots(obs);
  for (const auto& w : agg.warnings) log << "warning: " << w << '\n';
  std::map<std::string, std::size_t> counts;
  for (const auto& p : plots_seen) counts[p] = 0;
  for (const auto& p : agg.plots) counts[p.plot_id] = p.count;
  {
    auto out = open_out(c.out_dir / "plots.csv");
    out << header.str() << "plot_id,count\n";
    for (const auto& [plot, n] : counts) out << csv_safe(plot) << ',' << n << '\n';
  }
  {
    std::size_t no1 = 0;
    for (const auto& o : obs)
      if (classify_usda_grade(o) == Grade::UsNo1) ++no1;
    auto out = open_out(c.out_dir / "grades.csv");
    out << header.str() << "grade,count\n"
        << grade_name(Grade::UsNo1) << ',' << no1 << '\n'
        << grade_name(Grade::Other) << ',' << obs.size() - no1 << '\n';
  }
  log << obs.size() << " observations in " << counts.size() << " plots\n";
  return status;
}

namespace {

struct MetricRow {
  std::string metric;
  std::optional<RegressionSummary> reg;
  std::optional<ChiSquareResult> chi;
  std::optional<std::size_t> sae;
};

void write_row(std::ostream& out, const MetricRow& r) {
  out << r.metric << ',';
  if (r.reg)
    out << fmt_num(r.reg->slope) << ',' << fmt_num(r.reg->r_squared) << ','
        << fmt_num(r.reg->rmse_unbiased) << ',' << r.reg->n << ',';
  else
    out << ",,,,";
  if (r.chi)
    out << fmt_num(r.chi->chi2) << ',' << r.chi->df << ',' << fmt_num(r.chi->p) << ',';
  else
    out << ",,,";
  if (r.sae) out << *r.sae;
  out << '\n';
}

std::optional<RegressionSummary> try_regress(const std::vector<double>& xs,
                                             const std::vector<double>& ys, const std::string& what,
                                             std::ostream& log) {
  try {
    return regress_through_origin(xs, ys);
  } catch (const DomainError& e) {
    log << "note: " << what << " regression skipped: " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int run_validate(const ValidateConfig& c, std::ostream& log) {
  validate(c);
  std::vector<RootObservation> obs;
  std::vector<SorterRecord> sorter;
  {
    auto in = open_in(c.observations);
    obs = read_observation_csv(in);
  }
  {
    auto in = open_in(c.sorter);
    sorter = parse_sorter_csv(in);
  }

  // metric accessors: 0 length, 1 width, 2 weight
  auto obs_metric = [](const RootObservation& o, int m) {
    return m == 0 ? o.length : m == 1 ? o.width : o.weight_est;
  };
  auto sorter_metric = [](const SorterRecord& s, int m) {
    return m == 0 ? s.length : m == 1 ? s.width : s.weight;
  };

  std::map<std::string, std::vector<const RootObservation*>> obs_by_plot;
  std::map<std::string, std::vector<const SorterRecord*>> sorter_by_plot;
  for (const auto& o : obs) obs_by_plot[o.plot_id].push_back(&o);
  for (const auto& s : sorter) sorter_by_plot[s.plot_id].push_back(&s);
  std::vector<std::string> common_plots;
  for (const auto& [plot, list] : obs_by_plot)
    if (sorter_by_plot.count(plot)) common_plots.push_back(plot);

  std::array<std::vector<double>, 3> reg_x, reg_y, hist_obs, hist_sorter;
  std::string join_name;
  if (c.join == JoinKey::Plot) {
    join_name = "plot";
    if (common_plots.empty()) {
      std::string msg = "no shared plot_id; observation plots:";
      for (const auto& [p, l] : obs_by_plot) msg += " " + p;
      msg += "; sorter plots:";
      for (const auto& [p, l] : sorter_by_plot) msg += " " + p;
      throw JoinError(msg);
    }
    for (const auto& plot : common_plots) {
      const auto& ol = obs_by_plot[plot];
      const auto& sl = sorter_by_plot[plot];
      for (int m = 0; m < 3; ++m) {
        double so = 0.0, ss = 0.0;
        for (const auto* o : ol) {
          so += obs_metric(*o, m);
          hist_obs[m].push_back(obs_metric(*o, m));
        }
        for (const auto* s : sl) {
          ss += sorter_metric(*s, m);
          hist_sorter[m].push_back(sorter_metric(*s, m));
        }
        reg_x[m].push_back(so / static_cast<double>(ol.size()));
        reg_y[m].push_back(ss / static_cast<double>(sl.size()));
      }
    }
  } else {
    join_name = "root";
    std::map<std::string, const SorterRecord*> sorter_by_root;
    for (const auto& s : sorter)
      if (s.root_id) sorter_by_root[*s.root_id] = &s;
    std::vector<std::string> unmatched;
    std::size_t matched = 0;
    for (const auto& o : obs) {
      const auto it = sorter_by_root.find(o.root_id);
      if (it == sorter_by_root.end()) {
        unmatched.push_back(o.root_id);
        continue;
      }
      ++matched;
      for (int m = 0; m < 3; ++m) {
        reg_x[m].push_back(obs_metric(o, m));
        reg_y[m].push_back(sorter_metric(*it->second, m));
        hist_obs[m].push_back(obs_metric(o, m));
        hist_sorter[m].push_back(sorter_metric(*it->second, m));
      }
    }
    if (matched == 0) {
      std::string msg = "no shared root_id; unmatched observation roots:";
      for (const auto& r : unmatched) msg += " " + r;
      throw JoinError(msg);
    }
    if (!unmatched.empty()) log << "note: " << unmatched.size() << " observations without a sorter match\n";
  }

  const std::array<std::string, 3> names{"length", "width", "weight"};
  const std::array<double, 3> bins{c.length_bin, c.width_bin, c.weight_bin};
  std::vector<MetricRow> rows;
  for (int m = 0; m < 3; ++m) {
    MetricRow row;
    row.metric = names[m];
    row.reg = try_regress(reg_x[m], reg_y[m], names[m], log);
    const Histogram ho = build_histogram(hist_obs[m], bins[m], c.bin_origin);
    const Histogram hs = build_histogram(hist_sorter[m], bins[m], c.bin_origin);
    row.sae = sum_absolute_error(ho, hs);
    try {
      row.chi = chi_square_gof(ho, hs, c.min_count);
    } catch (const InsufficientDataError& e) {
      log << "note: " << names[m] << " chi-square skipped: " << e.what() << '\n';
    }
    rows.push_back(row);
  }
  {
    std::vector<double> xs, ys;
    for (const auto& plot : common_plots) {
      xs.push_back(static_cast<double>(obs_by_plot[plot].size()));
      ys.push_back(static_cast<double>(sorter_by_plot[plot].size()));
    }
    MetricRow row;
    row.metric = "count";
    row.reg = try_regress(xs, ys, "count", log);
    rows.push_back(row);
  }

  auto out = open_out(c.out);
  out << "# tuberscope validate join=" << join_name << " length_bin_cm=" << fmt_num(c.length_bin)
      << " width_bin_cm=" << fmt_num(c.width_bin) << " weight_bin_g=" << fmt_num(c.weight_bin)
      << " bin_origin=" << fmt_num(c.bin_origin) << " min_count=" << c.min_count << '\n';
  out << kValidationCsvHeader << '\n';
  for (const auto& r : rows) write_row(out, r);
  return kExitOk;
}

int run_budget(const BudgetConfig& c, std::ostream& log) {
  validate(c);
  auto in = open_in(c.terms);
  const std::vector<ErrorTerm> terms = read_error_terms(in);
  const ErrorBudget budget = combine_error_budget(terms);
  auto out = open_out(c.out);
  out << "# tuberscope budget bias=product rms=quadrature\n";
  write_budget_csv(out, budget);
  log << "total_bias " << fmt_fixed(budget.total_bias, 2) << ", total_rms "
      << fmt_fixed(budget.total_rms, 2) << " g\n";
  return kExitOk;
}

}  // namespace tuberscope::cli
