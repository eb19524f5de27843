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

#include "akira/spline.hpp"

#include <algorithm>

#include "akira/error.hpp"

namespace akira {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  if (n < 2 || values_.size() != n) {
    throw ConfigError("spline needs at least two knots with one value each");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw ConfigError("spline knots must be strictly increasing");
  }

  second_.assign(n, 0.0);
  if (n == 2) return;

  // Tridiagonal system for the interior second derivatives (Thomas algorithm).
  const std::size_t m = n - 2;
  std::vector<double> diag(m), upper(m), rhs(m);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = knots_[i] - knots_[i - 1];
    const double h1 = knots_[i + 1] - knots_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0);
  }
  for (std::size_t i = 1; i < m; ++i) {
    const double lower = knots_[i + 1] - knots_[i];  // h_{i} couples row i to row i-1
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  second_[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    second_[i + 1] = (rhs[i] - upper[i] * second_[i + 2]) / diag[i];
  }
}

std::size_t NaturalCubicSpline::segment(double x) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, knots_.size() - 2);
}

double NaturalCubicSpline::operator()(double x) const {
  const std::size_t i = segment(x);
  const double h = knots_[i + 1] - knots_[i];
  const double a = (knots_[i + 1] - x) / h;
  const double b = (x - knots_[i]) / h;
  return a * values_[i] + b * values_[i + 1] +
         ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]) * (h * h) / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = knots_[i + 1] - knots_[i];
  const double a = (knots_[i + 1] - x) / h;
  const double b = (x - knots_[i]) / h;
  return (values_[i + 1] - values_[i]) / h +
         h / 6.0 * (-(3.0 * a * a - 1.0) * second_[i] + (3.0 * b * b - 1.0) * second_[i + 1]);
}

}  // namespace akira
