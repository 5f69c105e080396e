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
#include <algorithm>
#include <vector>

#include "tuberscope/errors.hpp"
#include "tuberscope/maskpipe.hpp"

namespace tuberscope {

CalibrationFactor CalibrationFactor::from_px_per_cm(double px_per_cm) {
  if (!(px_per_cm > 0.0)) throw DomainError("px_per_cm must be positive");
  return CalibrationFactor{px_per_cm};
}

TapeDetection detect_tape(const RgbImage& image, const ChannelThresholds& thresholds,
                          double tape_length_cm, std::size_t min_component) {
  if (image.empty()) throw DomainError("calibration image is empty");
  if (!(tape_length_cm > 0.0)) throw DomainError("tape length must be positive");

  const int w = image.width, h = image.height;
  const auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  std::size_t passing = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (thresholds.accepts(image.pixel(x, y))) {
        label[idx(x, y)] = 0;  // candidate, not yet labelled
        ++passing;
      }
  if (passing == 0) throw CalibrationError("no pixels pass the tape thresholds");

  // 8-connected labelling; keep the largest component (first found on ties).
  int next_label = 1, best_label = 0;
  std::size_t best_size = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (label[idx(x, y)] != 0) continue;
      const int lab = next_label++;
      std::size_t size = 0;
      label[idx(x, y)] = lab;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++size;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || label[idx(nx, ny)] != 0) continue;
            label[idx(nx, ny)] = lab;
            stack.emplace_back(nx, ny);
          }
      }
      if (size > best_size) {
        best_size = size;
        best_label = lab;
      }
    }
  }
  if (best_size < min_component)
    throw CalibrationError("largest tape component has " + std::to_string(best_size) +
                           " pixels; calibration is unreliable");

  // Row extremes suffice: the hull of the component's pixel squares.
  std::vector<Point2> corners;
  for (int y = 0; y < h; ++y) {
    int first = -1, last = -1;
    for (int x = 0; x < w; ++x) {
      if (label[idx(x, y)] != best_label) continue;
      if (first < 0) first = x;
      last = x;
    }
    if (first < 0) continue;
    corners.emplace_back(first, y);
    corners.emplace_back(first, y + 1);
    corners.emplace_back(last + 1, y);
    corners.emplace_back(last + 1, y + 1);
  }

  TapeDetection det;
  det.rect = min_area_rect(corners);
  det.component_pixels = best_size;
  det.factor = CalibrationFactor::from_px_per_cm(det.rect.length / tape_length_cm);
  return det;
}

}  // namespace tuberscope
