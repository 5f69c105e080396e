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
#include "tuberscope/maskpipe.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tuberscope/errors.hpp"
#include "tuberscope/estimate.hpp"
#include "tuberscope/format.hpp"

namespace tuberscope {

PolygonMask make_polygon_mask(std::vector<Point2> points, std::string image_id,
                              std::string region_id) {
  if (points.size() >= 2 && points.front() == points.back()) points.pop_back();  // closed ring
  if (points.size() < 3) throw DomainError("polygon needs at least 3 points");
  if (!is_simple_polygon(points)) throw DomainError("polygon edges intersect");
  const double a = signed_area(points);
  if (a == 0.0) throw DomainError("polygon has zero area");
  if (a < 0.0) std::reverse(points.begin(), points.end());
  return PolygonMask{std::move(points), std::move(image_id), std::move(region_id)};
}

RootObservation mask_metrics(const PolygonMask& mask, const CalibrationFactor& cal,
                             const std::string& plot_id) {
  if (!(cal.px_per_cm > 0.0)) throw DomainError("px_per_cm must be positive");
  const OrientedRect rect = min_area_rect(mask.points);
  RootObservation obs;
  obs.root_id = mask.region_id;
  obs.plot_id = plot_id;
  obs.length = rect.length / cal.px_per_cm;
  obs.width = rect.width / cal.px_per_cm;
  obs.area = polygon_area(mask) / (cal.px_per_cm * cal.px_per_cm);
  obs.weight_est = weight_from_volume(ellipsoid_volume(obs.area, 0.5 * obs.width));
  return obs;
}

std::vector<RootObservation> filter_sorter_minimums(std::span<const RootObservation> obs) {
  std::vector<RootObservation> kept;
  for (const auto& o : obs)
    if (!(o.width < kSorterMinWidth) && !(o.length < kSorterMinLength)) kept.push_back(o);
  return kept;
}

std::string grade_name(Grade g) { return g == Grade::UsNo1 ? "US_No1" : "Other"; }

Grade classify_usda_grade(const RootObservation& obs) {
  const bool width_ok = obs.width >= kUsNo1MinWidth && obs.width <= kUsNo1MaxWidth;
  const bool length_ok = obs.length >= kUsNo1MinLength && obs.length <= kUsNo1MaxLength;
  const bool weight_ok = obs.weight_est <= kUsNo1MaxWeight;
  return width_ok && length_ok && weight_ok ? Grade::UsNo1 : Grade::Other;
}

std::vector<SorterRecord> parse_sorter_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const auto c_plot = table.column("plot_id");
  const auto c_root = table.column("root_id");
  const auto c_len = table.column("length_cm");
  const auto c_wid = table.column("width_cm");
  const auto c_wt = table.column("weight_g");

  std::vector<SorterRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    auto cell = [&](std::size_t c) { return c < row.cells.size() ? row.cells[c] : std::string(); };
    auto number = [&](std::size_t c, const char* name) {
      const auto v = parse_double(cell(c));
      if (!v) throw ParseError(std::string(name) + " '" + cell(c) + "' is not a number", row.line);
      if (!(*v > 0.0)) throw ParseError(std::string(name) + " must be positive", row.line);
      return *v;
    };
    SorterRecord r;
    r.plot_id = cell(c_plot);
    if (r.plot_id.empty()) throw ParseError("plot_id is blank", row.line);
    if (!cell(c_root).empty()) r.root_id = cell(c_root);
    r.length = number(c_len, "length_cm");
    r.width = number(c_wid, "width_cm");
    r.weight = number(c_wt, "weight_g");
    out.push_back(std::move(r));
  }
  return out;
}

PlotAggregation aggregate_plots(std::span<const RootObservation> obs) {
  std::map<std::string, std::vector<RootObservation>> groups;
  for (const auto& o : obs) groups[o.plot_id].push_back(o);
  PlotAggregation agg;
  for (auto& [plot, list] : groups) {
    std::set<std::string> seen;
    for (const auto& o : list)
      if (!seen.insert(o.root_id).second)
        agg.warnings.push_back("duplicate root_id '" + o.root_id + "' in plot '" + plot + "'");
    PlotRecord rec;
    rec.plot_id = plot;
    rec.count = list.size();
    rec.observations = std::move(list);
    agg.plots.push_back(std::move(rec));
  }
  return agg;
}

void write_observation_csv(std::ostream& out, std::span<const RootObservation> obs) {
  out << kObservationCsvHeader << '\n';
  for (const auto& o : obs) {
    out << csv_safe(o.plot_id) << ',' << csv_safe(o.root_id) << ',' << fmt_num(o.length) << ','
        << fmt_num(o.width) << ',' << fmt_num(o.area) << ',' << fmt_num(o.weight_est) << ','
        << grade_name(classify_usda_grade(o)) << '\n';
  }
}

std::vector<RootObservation> read_observation_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const auto c_plot = table.column("plot_id");
  const auto c_root = table.column("root_id");
  const auto c_len = table.column("length_cm");
  const auto c_wid = table.column("width_cm");
  const auto c_area = table.column("area_cm2");
  const auto c_wt = table.column("weight_g");
  std::vector<RootObservation> out;
  for (const auto& row : table.rows) {
    auto cell = [&](std::size_t c) { return c < row.cells.size() ? row.cells[c] : std::string(); };
    auto number = [&](std::size_t c) {
      const auto v = parse_double(cell(c));
      if (!v) throw ParseError("'" + cell(c) + "' is not a number", row.line);
      return *v;
    };
    RootObservation o;
    o.plot_id = cell(c_plot);
    o.root_id = cell(c_root);
    o.length = number(c_len);
    o.width = number(c_wid);
    o.area = number(c_area);
    o.weight_est = number(c_wt);
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace tuberscope
