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
#ifndef TUBERSCOPE_ERRORS_HPP
#define TUBERSCOPE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tuberscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the operation (non-positive size,
/// non-unit quaternion, mismatched lengths, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based, or 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Geometry collapsed to a lower dimension (collinear points, empty raster).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// The pivot loop on a plane did not reach a resting face.
class SettlingError : public Error {
 public:
  using Error::Error;
};

/// The body passes between two rollers at every scanned roll angle.
class FallThroughError : public Error {
 public:
  using Error::Error;
};

/// A CSV header is missing a required column.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Tape detection failed or produced an unusable component.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Too few samples or bins remain for a statistic.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Observation and sorter records share no join key.
class JoinError : public Error {
 public:
  using Error::Error;
};

}  // namespace tuberscope

#endif  // TUBERSCOPE_ERRORS_HPP
