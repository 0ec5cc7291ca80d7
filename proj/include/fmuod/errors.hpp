// Copyright 2026 The fmuod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fmuod {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInvalidCurve,
  kInsufficientData,
  kDegenerateReference,
  kInvalidDirection,
  kInvalidConfig,
  kParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidCurve : public Error {
 public:
  explicit InvalidCurve(const std::string& what) : Error(ErrorKind::kInvalidCurve, what) {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error(ErrorKind::kInsufficientData, what) {}
};

/// The reference curve is constant on the grid, so every index would divide by zero.
class DegenerateReference : public Error {
 public:
  explicit DegenerateReference(const std::string& what)
      : Error(ErrorKind::kDegenerateReference, what) {}
};

class InvalidDirection : public Error {
 public:
  explicit InvalidDirection(const std::string& what) : Error(ErrorKind::kInvalidDirection, what) {}
};

class InvalidConfig : public Error {
 public:
  explicit InvalidConfig(const std::string& what) : Error(ErrorKind::kInvalidConfig, what) {}
};

/// Malformed input file. `line` is 1-based; 0 when the problem is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorKind::kParseError,
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fmuod
