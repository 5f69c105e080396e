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
#ifndef TUBERSCOPE_MASKPIPE_HPP
#define TUBERSCOPE_MASKPIPE_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tuberscope/geometry2d.hpp"
#include "tuberscope/image.hpp"

namespace tuberscope {

// Grading thresholds, cm and g.
inline constexpr double kSorterMinWidth = 2.54;
inline constexpr double kSorterMinLength = 5.08;
inline constexpr double kUsNo1MinWidth = 4.45;
inline constexpr double kUsNo1MaxWidth = 8.89;
inline constexpr double kUsNo1MinLength = 7.62;
inline constexpr double kUsNo1MaxLength = 22.86;
inline constexpr double kUsNo1MaxWeight = 567.0;

/// Annotated outline in pixel coordinates, stored counter-clockwise.
struct PolygonMask {
  std::vector<Point2> points;
  std::string image_id;
  std::string region_id;
};

/// Validates (>= 3 points, simple, non-zero area) and orients CCW.
/// Throws DomainError otherwise.
PolygonMask make_polygon_mask(std::vector<Point2> points, std::string image_id,
                              std::string region_id = {});

struct CalibrationFactor {
  double px_per_cm = 0.0;

  /// Throws DomainError unless px_per_cm > 0.
  static CalibrationFactor from_px_per_cm(double px_per_cm);
};

/// Inclusive per-channel RGB window.
struct ChannelThresholds {
  std::array<std::uint8_t, 3> min{0, 0, 0};
  std::array<std::uint8_t, 3> max{255, 255, 255};

  bool accepts(const std::uint8_t* rgb) const {
    for (int k = 0; k < 3; ++k)
      if (rgb[k] < min[k] || rgb[k] > max[k]) return false;
    return true;
  }
  static ChannelThresholds blue_tape() { return {{0, 0, 120}, {90, 140, 255}}; }
  static ChannelThresholds red_tape() { return {{150, 0, 0}, {255, 90, 90}}; }
};

struct TapeDetection {
  CalibrationFactor factor;
  OrientedRect rect;  // pixels
  std::size_t component_pixels = 0;
};

/// Threshold, keep the largest 8-connected component, take the
/// minimum-area rectangle of its hull (pixel corners) and divide the long
/// side by the tape length. Throws CalibrationError when nothing passes or
/// the component is smaller than `min_component` pixels.
TapeDetection detect_tape(const RgbImage& image, const ChannelThresholds& thresholds,
                          double tape_length_cm, std::size_t min_component = 100);

inline CalibrationFactor detect_tape_calibration(const RgbImage& image,
                                                 const ChannelThresholds& thresholds,
                                                 double tape_length_cm) {
  return detect_tape(image, thresholds, tape_length_cm).factor;
}

// VIA annotations ---------------------------------------------------------------

struct ViaImage {
  std::string image_id;  // filename, or the entry key when absent
  std::string plot_id;   // file_attributes.plot_id, else the filename stem
  std::vector<PolygonMask> masks;
};

struct ViaAnnotations {
  std::map<std::string, ViaImage> images;
  std::size_t skipped_regions = 0;  // non-polygon shapes
};

/// Accepts a VIA project (`_via_img_metadata`) or a bare annotation export,
/// with `regions` as an array or as an index-keyed object. Throws ParseError
/// on malformed JSON or a polygon whose coordinate arrays disagree.
ViaAnnotations parse_via_annotations(std::istream& in);

// Per-root metrics --------------------------------------------------------------

/// Absolute shoelace area in px^2.
inline double polygon_area(const PolygonMask& mask) { return polygon_area_abs(mask.points); }

struct RootObservation {
  std::string root_id;
  double length = 0.0;      // cm
  double width = 0.0;       // cm
  double area = 0.0;        // cm^2
  double weight_est = 0.0;  // g, ellipsoid model at density 1
  std::string plot_id;
};

/// Length/width from the minimum-area rectangle of the hull, area from the
/// shoelace formula, weight = 4/3 * area * width / 2.
RootObservation mask_metrics(const PolygonMask& mask, const CalibrationFactor& cal,
                             const std::string& plot_id);

/// Drops roots narrower than 2.54 cm or shorter than 5.08 cm; equality is kept.
std::vector<RootObservation> filter_sorter_minimums(std::span<const RootObservation> obs);

enum class Grade { UsNo1, Other };

std::string grade_name(Grade g);

/// U.S. No. 1: 4.45 <= width <= 8.89, 7.62 <= length <= 22.86, weight <= 567.
Grade classify_usda_grade(const RootObservation& obs);

// Sorter records and plots --------------------------------------------------------

struct SorterRecord {
  std::string plot_id;
  std::optional<std::string> root_id;
  double length = 0.0;  // cm
  double width = 0.0;   // cm
  double weight = 0.0;  // g
};

/// Reads `plot_id,root_id,length_cm,width_cm,weight_g`. Throws SchemaError for
/// a missing column and ParseError (with line) for bad numbers.
std::vector<SorterRecord> parse_sorter_csv(std::istream& in);

struct PlotRecord {
  std::string plot_id;
  std::vector<RootObservation> observations;
  std::size_t count = 0;
};

struct PlotAggregation {
  std::vector<PlotRecord> plots;  // sorted by plot_id
  std::vector<std::string> warnings;
};

/// Groups by plot. Duplicate root ids within a plot are kept and reported.
PlotAggregation aggregate_plots(std::span<const RootObservation> obs);

inline constexpr const char* kObservationCsvHeader =
    "plot_id,root_id,length_cm,width_cm,area_cm2,weight_g,grade";

void write_observation_csv(std::ostream& out, std::span<const RootObservation> obs);

/// Reads the observation CSV written above (the grade column is ignored).
std::vector<RootObservation> read_observation_csv(std::istream& in);

}  // namespace tuberscope

#endif  // TUBERSCOPE_MASKPIPE_HPP
