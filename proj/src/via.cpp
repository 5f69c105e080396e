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
// VGG Image Annotator exports.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "tuberscope/errors.hpp"
#include "tuberscope/maskpipe.hpp"

namespace tuberscope {
namespace {

using json = nlohmann::json;

std::string as_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return std::to_string(v.get<double>());
  return {};
}

void read_region(const json& region, std::size_t index, ViaImage& image, ViaAnnotations& out) {
  const std::string where = "image '" + image.image_id + "' region " + std::to_string(index);
  if (!region.is_object() || !region.contains("shape_attributes"))
    throw ParseError("missing shape_attributes in " + where);
  const json& shape = region["shape_attributes"];
  if (shape.value("name", std::string()) != "polygon") {
    ++out.skipped_regions;
    return;
  }
  const json& xs = shape.value("all_points_x", json::array());
  const json& ys = shape.value("all_points_y", json::array());
  if (!xs.is_array() || !ys.is_array()) throw ParseError("point lists are not arrays in " + where);
  if (xs.size() != ys.size())
    throw ParseError("all_points_x has " + std::to_string(xs.size()) + " entries but all_points_y has " +
                     std::to_string(ys.size()) + " in " + where);
  if (xs.size() < 3) throw ParseError("polygon needs at least 3 points in " + where);

  std::vector<Point2> pts;
  pts.reserve(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!xs[k].is_number() || !ys[k].is_number())
      throw ParseError("non-numeric coordinate in " + where);
    pts.emplace_back(xs[k].get<double>(), ys[k].get<double>());
  }

  std::string region_id;
  if (region.contains("region_attributes") && region["region_attributes"].is_object()) {
    const json& attrs = region["region_attributes"];
    for (const char* key : {"root_id", "id"})
      if (attrs.contains(key) && !as_text(attrs[key]).empty()) {
        region_id = as_text(attrs[key]);
        break;
      }
  }
  if (region_id.empty()) region_id = image.image_id + "#" + std::to_string(index);

  try {
    image.masks.push_back(make_polygon_mask(std::move(pts), image.image_id, region_id));
  } catch (const DomainError& e) {
    throw ParseError(std::string(e.what()) + " in " + where);
  }
}

}  // namespace

ViaAnnotations parse_via_annotations(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid VIA JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("VIA document is not a JSON object");
  const json& entries = doc.contains("_via_img_metadata") ? doc["_via_img_metadata"] : doc;
  if (!entries.is_object()) throw ParseError("VIA image metadata is not an object");

  ViaAnnotations out;
  for (const auto& [key, entry] : entries.items()) {
    if (key.rfind("_via", 0) == 0) continue;
    if (!entry.is_object()) throw ParseError("VIA entry '" + key + "' is not an object");
    ViaImage image;
    image.image_id = entry.contains("filename") ? as_text(entry["filename"]) : key;
    if (image.image_id.empty()) image.image_id = key;
    image.plot_id = std::filesystem::path(image.image_id).stem().string();
    if (entry.contains("file_attributes") && entry["file_attributes"].is_object()) {
      const json& fa = entry["file_attributes"];
      if (fa.contains("plot_id") && !as_text(fa["plot_id"]).empty()) image.plot_id = as_text(fa["plot_id"]);
    }

    if (entry.contains("regions")) {
      const json& regions = entry["regions"];
      std::size_t index = 0;
      if (regions.is_array() || regions.is_object()) {
        for (const auto& region : regions) read_region(region, index++, image, out);
      } else if (!regions.is_null()) {
        throw ParseError("regions of '" + image.image_id + "' is neither array nor object");
      }
    }
    const std::string id = image.image_id;
    if (out.images.count(id)) throw ParseError("image '" + id + "' appears twice");
    out.images.emplace(id, std::move(image));
  }
  return out;
}

}  // namespace tuberscope
