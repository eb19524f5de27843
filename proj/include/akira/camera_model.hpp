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

// Extended pinhole camera: intrinsics K, radial distortion D, extrinsics
// [R|t] and an aperture/focus pair, plus the per-pixel 9-channel camera map
// (Plücker direction, Plücker moment, aperture) built from them.
//
// Conventions:
//   * Pixel (u, v) is column u, row v; integer coordinates are pixel centres.
//   * The pose maps world to camera: X_cam = R X + t. The camera centre is
//     O = -R^T t.
//   * Distortion acts on centre-relative coordinates normalized by the image
//     half-diagonal sqrt((W/2)^2 + (H/2)^2), so r = 1 at the corners of a
//     centred frame: u_D = c + (u - c) * (1 + k1 r^2 + k2 r^4 + k3 r^6).

#include <Eigen/Core>
#include <span>
#include <vector>

#include "akira/kernels/kernels.hpp"

namespace akira {

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 2;
  int height = 2;

  /// fx = fy = width, principal point at the frame centre.
  static CameraIntrinsics centered(int width, int height);

  void validate() const;
  /// Normalization radius of the distortion model.
  double half_diagonal() const;
  Eigen::Matrix3d matrix() const;

  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

struct Distortion {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;

  bool is_zero() const noexcept { return k1 == 0.0 && k2 == 0.0 && k3 == 0.0; }
  bool finite() const noexcept;
  /// All coefficients inside the sampled training range [-0.1, 0.1].
  bool within_training_range() const noexcept;
  /// Throws on non-finite coefficients; logs a warning outside the training range.
  void validate() const;

  double factor(double r2) const noexcept { return 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3)); }
  /// d/dr of the radial map r -> r * factor(r^2).
  double radial_slope(double r) const noexcept;
  /// Largest r such that the radial map is strictly increasing on [0, r);
  /// +inf when it increases everywhere.
  double monotone_limit() const;
  /// The radial map is strictly increasing on [0, r_max].
  bool monotone_up_to(double r_max) const { return monotone_limit() > r_max; }

  /// Coefficients describing the same lens after a centred zoom by `scale`:
  /// k_i / scale^(2i).
  Distortion rescaled(double scale) const noexcept;

  friend bool operator==(const Distortion&, const Distortion&) = default;
};

struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static CameraPose identity() { return {}; }
  /// Orthonormality and det = +1 within 1e-9.
  void validate() const;
  Eigen::Vector3d center() const { return -(rotation.transpose() * translation); }

  bool operator==(const CameraPose& other) const {
    return rotation == other.rotation && translation == other.translation;
  }
};

struct ApertureSpec {
  double alpha = 0.0;
  double focus_u = 0.0;
  double focus_v = 0.0;

  /// alpha >= 0, focus point inside [0, W-1] x [0, H-1].
  void validate(const CameraIntrinsics& intr) const;

  friend bool operator==(const ApertureSpec&, const ApertureSpec&) = default;
};

/// 9 x H x W, channel-major: direction (0..2), moment (3..5), aperture (6..8).
class CameraMap {
 public:
  static constexpr int kChannels = 9;

  CameraMap() = default;
  CameraMap(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::span<float> plane(int channel);
  std::span<const float> plane(int channel) const;
  float at(int channel, int x, int y) const { return plane(channel)[index(x, y)]; }

  Eigen::Vector3f direction(int x, int y) const { return triple(0, x, y); }
  Eigen::Vector3f moment(int x, int y) const { return triple(3, x, y); }
  Eigen::Vector3f aperture(int x, int y) const { return triple(6, x, y); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  friend bool operator==(const CameraMap&, const CameraMap&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }
  Eigen::Vector3f triple(int c, int x, int y) const {
    return {at(c, x, y), at(c + 1, x, y), at(c + 2, x, y)};
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

struct PluckerRay {
  Eigen::Vector3d direction;  // unit length
  Eigen::Vector3d moment;     // O x direction
};

/// Pinhole projection. Throws BehindCamera when the camera-frame depth is <= 1e-9.
Eigen::Vector2d project(const Eigen::Vector3d& point, const CameraPose& pose,
                        const CameraIntrinsics& intr);

Eigen::Vector2d distort_pixel(const Eigen::Vector2d& pixel, const CameraIntrinsics& intr,
                              const Distortion& dist);

/// Newton inversion of distort_pixel (at most 50 iterations, bracketed by
/// bisection). Throws InversionFailure when the radius cannot be reached on
/// the monotone part of the radial map or the iteration does not converge.
Eigen::Vector2d undistort_pixel(const Eigen::Vector2d& distorted, const CameraIntrinsics& intr,
                                const Distortion& dist);

/// Largest normalized radius of any frame corner (1 for a centred principal point).
double max_corner_radius(const CameraIntrinsics& intr);

/// distort_pixel is invertible for every pixel of the frame.
bool invertible_over_frame(const Distortion& dist, const CameraIntrinsics& intr);

PluckerRay plucker_ray(double u, double v, const CameraPose& pose, const CameraIntrinsics& intr,
                       const Distortion& dist);

/// Exponent 1 / sigmoid(prescale * alpha) of the aperture magnitude channel.
double aperture_exponent(double alpha, double sigmoid_prescale = 1.0);

Eigen::Vector3d aperture_map_value(double u, double v, const ApertureSpec& spec,
                                   double sigmoid_prescale = 1.0);

/// Flattened kernel parameters for one camera.
kernels::CameraRayParams ray_params(const CameraPose& pose, const CameraIntrinsics& intr,
                                    const Distortion& dist, const ApertureSpec& spec,
                                    double sigmoid_prescale = 1.0);

/// Throws DimensionMismatch unless height/width match the intrinsics.
CameraMap build_camera_map(const CameraPose& pose, const CameraIntrinsics& intr,
                           const Distortion& dist, const ApertureSpec& spec, int height,
                           int width, double sigmoid_prescale = 1.0);

/// Undistorted pinhole variant: never touches the distortion path.
CameraMap build_camera_map(const CameraPose& pose, const CameraIntrinsics& intr,
                           const ApertureSpec& spec, int height, int width,
                           double sigmoid_prescale = 1.0);

}  // namespace akira
