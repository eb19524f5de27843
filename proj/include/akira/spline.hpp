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

#include <span>
#include <vector>

namespace akira {

/// Interpolating cubic spline with natural boundary conditions (zero second
/// derivative at both ends). Two knots degenerate to linear interpolation.
class NaturalCubicSpline {
 public:
  /// knots must be strictly increasing and match values in length (>= 2).
  NaturalCubicSpline(std::vector<double> knots, std::vector<double> values);

  double operator()(double x) const;
  double derivative(double x) const;

  std::span<const double> knots() const noexcept { return knots_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> second_;  // second derivatives at the knots
};

}  // namespace akira
