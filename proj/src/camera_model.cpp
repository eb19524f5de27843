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

#include "akira/camera_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "akira/error.hpp"
#include "akira/kernels/pixel_ops.hpp"
#include "akira/log.hpp"

namespace akira {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Radial map phi(r) = r * (1 + k1 r^2 + k2 r^4 + k3 r^6).
double radial_map(const Distortion& d, double r) { return r * d.factor(r * r); }

// Slope of phi as a cubic in x = r^2.
double slope_in_x(const Distortion& d, double x) {
  return 1.0 + x * (3.0 * d.k1 + x * (5.0 * d.k2 + x * 7.0 * d.k3));
}

double bisect_slope_root(const Distortion& d, double lo, double hi) {
  // slope(lo) > 0 >= slope(hi)
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope_in_x(d, mid) > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

// --- CameraIntrinsics -------------------------------------------------------

CameraIntrinsics CameraIntrinsics::centered(int width, int height) {
  CameraIntrinsics k;
  k.fx = k.fy = static_cast<double>(width);
  k.cx = 0.5 * (width - 1);
  k.cy = 0.5 * (height - 1);
  k.width = width;
  k.height = height;
  return k;
}

void CameraIntrinsics::validate() const {
  if (!(std::isfinite(fx) && std::isfinite(fy) && fx > 0.0 && fy > 0.0)) {
    throw ConfigError("intrinsics: focal lengths must be finite and positive");
  }
  if (width < 2 || height < 2) throw ConfigError("intrinsics: frame must be at least 2x2");
  if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    throw ConfigError("intrinsics: principal point outside the frame");
  }
}

double CameraIntrinsics::half_diagonal() const {
  return 0.5 * std::hypot(static_cast<double>(width), static_cast<double>(height));
}

Eigen::Matrix3d CameraIntrinsics::matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

// --- Distortion ---------------------------------------------------------------

bool Distortion::finite() const noexcept {
  return std::isfinite(k1) && std::isfinite(k2) && std::isfinite(k3);
}

bool Distortion::within_training_range() const noexcept {
  auto in = [](double k) { return k >= -0.1 && k <= 0.1; };
  return in(k1) && in(k2) && in(k3);
}

void Distortion::validate() const {
  if (!finite()) throw ConfigError("distortion coefficients must be finite");
  if (!within_training_range()) {
    std::ostringstream os;
    os << "distortion (" << k1 << ", " << k2 << ", " << k3
       << ") outside the training range [-0.1, 0.1]";
    log::warn(os.str());
  }
}

double Distortion::radial_slope(double r) const noexcept { return slope_in_x(*this, r * r); }

double Distortion::monotone_limit() const {
  // slope(x) = 1 + 3k1 x + 5k2 x^2 + 7k3 x^3 with slope(0) = 1. Walk the
  // monotone pieces between critical points and find the first zero.
  std::array<double, 2> crit{};
  std::size_t ncrit = 0;
  const double a = 21.0 * k3, b = 10.0 * k2, c = 3.0 * k1;
  if (a != 0.0) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      crit[ncrit++] = (-b - sq) / (2.0 * a);
      crit[ncrit++] = (-b + sq) / (2.0 * a);
    }
  } else if (b != 0.0) {
    crit[ncrit++] = -c / b;
  }
  std::sort(crit.begin(), crit.begin() + ncrit);

  double prev = 0.0;
  for (std::size_t i = 0; i < ncrit; ++i) {
    const double cp = crit[i];
    if (cp <= prev) continue;
    if (slope_in_x(*this, cp) <= 0.0) return std::sqrt(bisect_slope_root(*this, prev, cp));
    prev = cp;
  }

  const double lead = k3 != 0.0 ? k3 : (k2 != 0.0 ? k2 : k1);
  if (lead >= 0.0) return kInf;
  double hi = std::max(1.0, 2.0 * prev);
  while (slope_in_x(*this, hi) > 0.0) hi *= 2.0;
  return std::sqrt(bisect_slope_root(*this, prev, hi));
}

Distortion Distortion::rescaled(double scale) const noexcept {
  const double s2 = scale * scale;
  return {k1 / s2, k2 / (s2 * s2), k3 / (s2 * s2 * s2)};
}

// --- CameraPose / ApertureSpec ----------------------------------------------

void CameraPose::validate() const {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw ConfigError("pose: non-finite rotation or translation");
  }
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > 1e-9 || std::abs(rotation.determinant() - 1.0) > 1e-9) {
    throw ConfigError("pose: rotation is not a proper orthonormal matrix");
  }
}

void ApertureSpec::validate(const CameraIntrinsics& intr) const {
  if (!(std::isfinite(alpha) && alpha >= 0.0)) throw ConfigError("aperture: alpha must be >= 0");
  if (!(focus_u >= 0.0 && focus_u <= intr.width - 1 && focus_v >= 0.0 &&
        focus_v <= intr.height - 1)) {
    throw ConfigError("aperture: focus point outside the frame");
  }
}

// --- CameraMap ----------------------------------------------------------------

CameraMap::CameraMap(int width, int height)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(kChannels) * width * height, 0.0f) {}

std::span<float> CameraMap::plane(int channel) {
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  return std::span<float>(data_).subspan(channel * n, n);
}

std::span<const float> CameraMap::plane(int channel) const {
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  return std::span<const float>(data_).subspan(channel * n, n);
}

// --- Operations -----------------------------------------------------------------

Eigen::Vector2d project(const Eigen::Vector3d& point, const CameraPose& pose,
                        const CameraIntrinsics& intr) {
  const Eigen::Vector3d cam = pose.rotation * point + pose.translation;
  if (!(cam.z() > 1e-9)) {
    std::ostringstream os;
    os << "point is behind the camera (depth " << cam.z() << ")";
    throw BehindCamera(os.str());
  }
  return {intr.fx * cam.x() / cam.z() + intr.cx, intr.fy * cam.y() / cam.z() + intr.cy};
}

Eigen::Vector2d distort_pixel(const Eigen::Vector2d& pixel, const CameraIntrinsics& intr,
                              const Distortion& dist) {
  if (!pixel.allFinite()) throw ConfigError("distort_pixel: non-finite coordinates");
  const double hd = intr.half_diagonal();
  const double du = pixel.x() - intr.cx;
  const double dv = pixel.y() - intr.cy;
  const double r2 = (du * du + dv * dv) / (hd * hd);
  // Offset form keeps D = 0 an exact identity.
  const double e = dist.factor(r2) - 1.0;
  return {pixel.x() + du * e, pixel.y() + dv * e};
}

Eigen::Vector2d undistort_pixel(const Eigen::Vector2d& distorted, const CameraIntrinsics& intr,
                                const Distortion& dist) {
  if (!distorted.allFinite()) throw ConfigError("undistort_pixel: non-finite coordinates");
  const double hd = intr.half_diagonal();
  const double du = distorted.x() - intr.cx;
  const double dv = distorted.y() - intr.cy;
  const double target = std::sqrt(du * du + dv * dv) / hd;
  if (target == 0.0 || dist.is_zero()) return distorted;

  const double limit = dist.monotone_limit();
  double lo = 0.0;
  double hi;
  if (std::isfinite(limit)) {
    const double reachable = radial_map(dist, limit);
    if (!(target < reachable)) {
      throw InversionFailure("undistort_pixel: radius beyond the monotone range of the distortion",
                             (target - reachable) * hd);
    }
    hi = limit;
  } else {
    hi = std::max(1.0, target);
    while (radial_map(dist, hi) < target) hi *= 2.0;
  }

  double r = std::clamp(target, lo, hi);
  double residual = kInf;
  for (int it = 0; it < 50; ++it) {
    const double f = radial_map(dist, r) - target;
    residual = std::abs(f) * hd;
    if (residual < 1e-10) {
      const double s = r / target;
      return {intr.cx + du * s, intr.cy + dv * s};
    }
    (f < 0.0 ? lo : hi) = r;
    const double slope = dist.radial_slope(r);
    double next = slope > 0.0 ? r - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
  }
  std::ostringstream os;
  os << "undistort_pixel: no convergence after 50 iterations (residual " << residual << " px)";
  throw InversionFailure(os.str(), residual);
}

double max_corner_radius(const CameraIntrinsics& intr) {
  const double hd = intr.half_diagonal();
  double best = 0.0;
  for (double x : {0.0, intr.width - 1.0}) {
    for (double y : {0.0, intr.height - 1.0}) {
      best = std::max(best, std::hypot(x - intr.cx, y - intr.cy) / hd);
    }
  }
  return best;
}

bool invertible_over_frame(const Distortion& dist, const CameraIntrinsics& intr) {
  const double limit = dist.monotone_limit();
  if (!std::isfinite(limit)) return true;
  return radial_map(dist, limit) > max_corner_radius(intr);
}

kernels::CameraRayParams ray_params(const CameraPose& pose, const CameraIntrinsics& intr,
                                    const Distortion& dist, const ApertureSpec& spec,
                                    double sigmoid_prescale) {
  kernels::CameraRayParams p{};
  p.fx = intr.fx;
  p.fy = intr.fy;
  p.cx = intr.cx;
  p.cy = intr.cy;
  const double hd = intr.half_diagonal();
  p.half_diag_sq = hd * hd;
  p.k1 = dist.k1;
  p.k2 = dist.k2;
  p.k3 = dist.k3;
  const Eigen::Matrix3d rt = pose.rotation.transpose();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) p.rt[3 * r + c] = rt(r, c);
  }
  const Eigen::Vector3d o = pose.center();
  p.center[0] = o.x();
  p.center[1] = o.y();
  p.center[2] = o.z();
  p.focus_u = spec.focus_u;
  p.focus_v = spec.focus_v;
  p.aperture_exponent = aperture_exponent(spec.alpha, sigmoid_prescale);
  return p;
}

PluckerRay plucker_ray(double u, double v, const CameraPose& pose, const CameraIntrinsics& intr,
                       const Distortion& dist) {
  const auto p = ray_params(pose, intr, dist, ApertureSpec{});
  const auto ray = kernels::ops::camera_ray(p, u, v);
  return {{ray.d[0], ray.d[1], ray.d[2]}, {ray.m[0], ray.m[1], ray.m[2]}};
}

double aperture_exponent(double alpha, double sigmoid_prescale) {
  // 1 / sigmoid(x) == 1 + exp(-x)
  return 1.0 + std::exp(-sigmoid_prescale * alpha);
}

Eigen::Vector3d aperture_map_value(double u, double v, const ApertureSpec& spec,
                                   double sigmoid_prescale) {
  const double du = u - spec.focus_u;
  const double dv = v - spec.focus_v;
  return {du, dv,
          kernels::ops::aperture_magnitude(du, dv, aperture_exponent(spec.alpha, sigmoid_prescale))};
}

namespace {

void check_map_inputs(const CameraPose& pose, const CameraIntrinsics& intr,
                      const ApertureSpec& spec, int height, int width) {
  intr.validate();
  pose.validate();
  spec.validate(intr);
  if (height != intr.height || width != intr.width) {
    std::ostringstream os;
    os << "camera map size " << width << "x" << height << " does not match intrinsics "
       << intr.width << "x" << intr.height;
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

CameraMap build_camera_map(const CameraPose& pose, const CameraIntrinsics& intr,
                           const Distortion& dist, const ApertureSpec& spec, int height,
                           int width, double sigmoid_prescale) {
  check_map_inputs(pose, intr, spec, height, width);
  dist.validate();
  const auto params = ray_params(pose, intr, dist, spec, sigmoid_prescale);
  const auto& k = kernels::active_kernels();

  CameraMap map(width, height);
  for (int y = 0; y < height; ++y) {
    float* rows[CameraMap::kChannels];
    for (int c = 0; c < CameraMap::kChannels; ++c) {
      rows[c] = map.plane(c).data() + static_cast<std::size_t>(y) * width;
    }
    k.camera_map_row(params, y, width, rows);
  }
  return map;
}

CameraMap build_camera_map(const CameraPose& pose, const CameraIntrinsics& intr,
                           const ApertureSpec& spec, int height, int width,
                           double sigmoid_prescale) {
  check_map_inputs(pose, intr, spec, height, width);
  const Eigen::Matrix3d rt = pose.rotation.transpose();
  const Eigen::Vector3d o = pose.center();
  const double exponent = aperture_exponent(spec.alpha, sigmoid_prescale);

  CameraMap map(width, height);
  std::array<std::span<float>, CameraMap::kChannels> planes;
  for (int c = 0; c < CameraMap::kChannels; ++c) planes[c] = map.plane(c);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double xn = (x - intr.cx) / intr.fx;
      const double yn = (y - intr.cy) / intr.fy;
      double d[3];
      for (int r = 0; r < 3; ++r) d[r] = rt(r, 0) * xn + rt(r, 1) * yn + rt(r, 2);
      const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      for (double& di : d) di = di / n;
      const double m[3] = {o.y() * d[2] - o.z() * d[1], o.z() * d[0] - o.x() * d[2],
                           o.x() * d[1] - o.y() * d[0]};
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      for (int c = 0; c < 3; ++c) {
        planes[c][i] = static_cast<float>(d[c]);
        planes[3 + c][i] = static_cast<float>(m[c]);
      }
      const double au = x - spec.focus_u;
      const double av = y - spec.focus_v;
      planes[6][i] = static_cast<float>(au);
      planes[7][i] = static_cast<float>(av);
      planes[8][i] = static_cast<float>(kernels::ops::aperture_magnitude(au, av, exponent));
    }
  }
  return map;
}

}  // namespace akira
