// Copyright 2026 The Semannot Authors.
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

#ifndef SEMANNOT_ERROR_HPP_
#define SEMANNOT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semannot {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid run configuration (unknown variant name, bad hyperparameter, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace semannot

#endif  // SEMANNOT_ERROR_HPP_
