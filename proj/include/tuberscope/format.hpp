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
#ifndef TUBERSCOPE_FORMAT_HPP
#define TUBERSCOPE_FORMAT_HPP

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tuberscope {

/// Locale-independent "%.*g" rendering used for every CSV number.
std::string fmt_num(double v, int significant = 10);

/// Fixed-point rendering with `decimals` digits.
std::string fmt_fixed(double v, int decimals);

/// Replaces separators and line breaks so a free-text field stays one cell.
std::string csv_safe(std::string_view text);

/// Splits one CSV record. Double-quoted fields may contain commas and "".
std::vector<std::string> split_csv_line(std::string_view line);

struct CsvRow {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> cells;
};

/// Header plus data rows. Blank lines and lines starting with '#' are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Column index by name; throws SchemaError listing the missing column.
  std::size_t column(const std::string& name) const;
  std::optional<std::size_t> find_column(const std::string& name) const;
};

/// Throws SchemaError when the stream has no header.
CsvTable read_csv(std::istream& in);

/// Strict double parse of a trimmed cell; nullopt for junk or empty text.
std::optional<double> parse_double(std::string_view text);

std::string trim(std::string_view text);

}  // namespace tuberscope

#endif  // TUBERSCOPE_FORMAT_HPP
