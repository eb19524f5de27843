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

// Independent reference computations used by the tests. Nothing here calls
// the library code it checks.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "akira/camera_model.hpp"
#include "akira/image.hpp"

namespace oracle {

/// Four-weight bilinear sample with edge clamping, in double.
inline double bilinear(const akira::Image& img, double x, double y, int c) {
  x = std::clamp(x, 0.0, img.width() - 1.0);
  y = std::clamp(y, 0.0, img.height() - 1.0);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double ax = x - x0, ay = y - y0;
  return (1 - ax) * (1 - ay) * img.at(x0, y0, c) + ax * (1 - ay) * img.at(x1, y0, c) +
         (1 - ax) * ay * img.at(x0, y1, c) + ax * ay * img.at(x1, y1, c);
}

/// Centred crop of size ((W-1)/s) x ((H-1)/s) around (cx, cy), resized back
/// to W x H with bilinear interpolation.
inline akira::Image crop_resize(const akira::Image& src, double s, double cx, double cy) {
  const int w = src.width(), h = src.height();
  const double crop_w = (w - 1) / s, crop_h = (h - 1) / s;
  const double left = cx - cx / s, top = cy - cy / s;
  akira::Image out(w, h, src.channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double sx = left + crop_w * x / (w - 1);
      const double sy = top + crop_h * y / (h - 1);
      for (int c = 0; c < src.channels(); ++c) {
        out.at(x, y, c) = static_cast<float>(bilinear(src, sx, sy, c));
      }
    }
  }
  return out;
}

/// Coverage-weighted disc average at (x, y): visits every pixel of the frame.
inline double disc_average(const akira::Image& img, int x, int y, int c, double radius) {
  if (radius <= 0.0) return img.at(x, y, c);
  double num = 0.0, den = 0.0;
  for (int yy = 0; yy < img.height(); ++yy) {
    for (int xx = 0; xx < img.width(); ++xx) {
      const double d = std::hypot(double(xx - x), double(yy - y));
      const double w = std::clamp(radius + 0.5 - d, 0.0, 1.0);
      if (w == 0.0) continue;
      num += w * img.at(xx, yy, c);
      den += w;
    }
  }
  return num / den;
}

struct Ray {
  Eigen::Vector3d d, m;
};

/// d = normalize(R^T K^-1 [u_D, v_D, 1]), m = (-R^T t) x d.
inline Ray plucker(double u, double v, const akira::CameraPose& pose,
                   const akira::CameraIntrinsics& k, const akira::Distortion& dist) {
  const double hd2 = 0.25 * (double(k.width) * k.width + double(k.height) * k.height);
  const double du = u - k.cx, dv = v - k.cy;
  const double r2 = (du * du + dv * dv) / hd2;
  const double g = 1 + dist.k1 * r2 + dist.k2 * r2 * r2 + dist.k3 * r2 * r2 * r2;
  const Eigen::Vector3d pd(k.cx + du * g, k.cy + dv * g, 1.0);
  Eigen::Matrix3d K;
  K << k.fx, 0, k.cx, 0, k.fy, k.cy, 0, 0, 1;
  const Eigen::Vector3d d = (pose.rotation.transpose() * K.inverse() * pd).normalized();
  const Eigen::Vector3d o = -pose.rotation.transpose() * pose.translation;
  return {d, o.cross(d)};
}

/// Natural cubic spline through values at uniform knots on [0, n-1],
/// evaluated at the integer frames, via a dense solve.
inline std::vector<double> natural_spline(const std::vector<double>& y, int n) {
  const int k = static_cast<int>(y.size());
  const double h = (n - 1.0) / (k - 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  a(0, 0) = a(k - 1, k - 1) = 1.0;
  for (int i = 1; i + 1 < k; ++i) {
    a(i, i - 1) = h;
    a(i, i) = 4 * h;
    a(i, i + 1) = h;
    b(i) = 6 * (y[i + 1] - 2 * y[i] + y[i - 1]) / h;
  }
  const Eigen::VectorXd m = a.fullPivLu().solve(b);
  std::vector<double> out(n);
  for (int t = 0; t < n; ++t) {
    const int s = std::min(static_cast<int>(t / h), k - 2);
    const double x0 = s * h, x1 = (s + 1) * h;
    const double A = (x1 - t) / h, B = (t - x0) / h;
    out[t] = A * y[s] + B * y[s + 1] + ((A * A * A - A) * m[s] + (B * B * B - B) * m[s + 1]) * h * h / 6;
  }
  return out;
}

/// Largest per-frame step of a spline with controls anywhere in [lo, hi]^k.
/// Steps are linear in the controls, so the maximum sits on a box vertex;
/// clamping to [lo, hi] can only shrink a step.
inline double max_spline_step(int k, int n, double lo, double hi) {
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<double> y(k);
    for (int j = 0; j < k; ++j) y[j] = (mask >> j) & 1 ? hi : lo;
    const auto s = natural_spline(y, n);
    for (int t = 0; t + 1 < n; ++t) best = std::max(best, std::abs(s[t + 1] - s[t]));
  }
  return best;
}

}  // namespace oracle
