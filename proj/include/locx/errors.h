// Copyright 2026 The locx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCX_ERRORS_H_
#define LOCX_ERRORS_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace locx {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: unknown format names, missing paths, invalid flags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. Carries the 0-based record (or line) index when the
// failure can be attributed to a single record.
class DataError : public Error {
 public:
  explicit DataError(const std::string &message) : Error(message) {}
  DataError(const std::string &message, std::size_t record)
      : Error(message + " (record " + std::to_string(record) + ")"),
        record_(record) {}

  std::optional<std::size_t> record() const { return record_; }

 private:
  std::optional<std::size_t> record_;
};

}  // namespace locx

#endif  // LOCX_ERRORS_H_
