// Copyright 2026 The akira-kit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace akira {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kConfig,   // invalid parameters, missing inputs, mismatched shapes
  kIo,       // unreadable / malformed files
  kNumeric,  // solver or geometry failures
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

struct BehindCamera : Error {
  explicit BehindCamera(const std::string& what) : Error(ErrorKind::kNumeric, what) {}
};

/// Raised when the radial distortion cannot be inverted at a pixel.
struct InversionFailure : Error {
  InversionFailure(const std::string& what, double residual)
      : Error(ErrorKind::kNumeric, what), residual(residual) {}
  double residual;
};

struct UnsupportedDistortion : Error {
  explicit UnsupportedDistortion(const std::string& what) : Error(ErrorKind::kNumeric, what) {}
};

struct DegenerateTrajectory : Error {
  explicit DegenerateTrajectory(const std::string& what) : Error(ErrorKind::kNumeric, what) {}
};

/// Trajectories whose timestamps cannot be associated one-to-one.
struct TimestampMismatch : Error {
  explicit TimestampMismatch(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

}  // namespace akira
