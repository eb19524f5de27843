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

// Optical augmentation kit: zoom (focal length), radial distortion and bokeh
// (aperture + focus point), driven by spline-smoothed per-frame parameters
// with nested augmentation dropout. Frames and camera parameters are updated
// together so that camera maps rebuilt from the emitted parameters describe
// the rays actually seen by each output pixel.
//
// Geometric warps are inverse maps: every OUTPUT pixel p samples the SOURCE
// image at warp(p). A centred zoom by s samples (p - c) / s + c; distortion
// samples distort_pixel(p). Distortion therefore moves image content by
// minus its displacement field.

#include <Eigen/Core>
#include <cstdint>
#include <json.hpp>
#include <span>
#include <vector>

#include "akira/camera_io.hpp"
#include "akira/camera_model.hpp"
#include "akira/image.hpp"

namespace akira {

/// Per-output-pixel source coordinates, in source pixels.
struct WarpField {
  int width = 0;
  int height = 0;
  std::vector<float> src_x;
  std::vector<float> src_y;

  WarpField() = default;
  WarpField(int w, int h);

  static WarpField identity(int w, int h);
  Eigen::Vector2d at(int x, int y) const {
    const std::size_t i = static_cast<std::size_t>(y) * width + x;
    return {src_x[i], src_y[i]};
  }
  /// Every source lies in [0, src_w-1] x [0, src_h-1].
  bool all_in_bounds(int src_w, int src_h) const;
};

struct EffectFlags {
  bool bokeh = false;
  bool distortion = false;
  bool zoom = false;

  bool any() const noexcept { return bokeh || distortion || zoom; }
  friend bool operator==(const EffectFlags&, const EffectFlags&) = default;
};

struct ParamRange {
  double lo = 0.0;
  double hi = 1.0;
};

// --- Sampling -----------------------------------------------------------------

/// Natural cubic spline through `controls` placed at uniformly spaced knots
/// over frames [0, frames-1], evaluated at every frame and clamped to [lo, hi].
std::vector<double> spline_through_controls(std::span<const double> controls, int frames,
                                            double lo, double hi);

/// Draws `control_points` values uniformly in [lo, hi] from `seed` and
/// interpolates them with spline_through_controls.
std::vector<double> sample_spline_trajectory(std::uint64_t seed, int frames, double lo, double hi,
                                             int control_points = 4);

/// Nested gates: with probability p any augmentation runs; then bokeh,
/// distortion and zoom are each enabled with probability p. Per-effect rate p^2.
EffectFlags apply_dropout(std::uint64_t seed, double p);

// --- Zoom -------------------------------------------------------------------------

/// Output p samples (p - c) / s + c.
WarpField zoom_warp_field(double s, const CameraIntrinsics& intr);

struct ZoomResult {
  Frame frame;
  CameraIntrinsics intrinsics;  // fx, fy multiplied by s
};

/// Centred crop of fraction 1/s resized back to full resolution. Throws
/// OutOfRange for s < 1.
ZoomResult zoom_warp(const Frame& frame, double s, const CameraIntrinsics& intr);

// --- Distortion ---------------------------------------------------------------------

/// Output p samples distort_pixel((p - c) / zoom + c).
WarpField distortion_warp_field(const Distortion& dist, const CameraIntrinsics& intr,
                                double zoom = 1.0);

/// Smallest centred zoom s >= 1 such that every output pixel of
/// distortion_warp_field(dist, intr, s) samples inside the source frame.
/// Throws UnsupportedDistortion if the radial map is not monotone over the frame.
double distortion_crop_factor(const Distortion& dist, const CameraIntrinsics& intr);

struct DistortionResult {
  Frame frame;
  WarpField warp;
  double zoom = 1.0;  // crop factor folded into the warp
};

DistortionResult distortion_warp(const Frame& frame, const Distortion& dist,
                                 const CameraIntrinsics& intr);

/// Bilinear resampling of pixels (and disparity, when present) through `warp`.
Frame apply_warp(const Frame& frame, const WarpField& warp);

// --- Bokeh ------------------------------------------------------------------------

struct BokehParams {
  double gain = 0.25;  // pixels of blur radius per unit of alpha * |d - d_in|
  double cap = 25.0;   // maximum radius in pixels
};

struct BokehResult {
  Frame frame;
  Image blur_radius;  // 1 channel, pixels
};

/// Per-pixel radius min(gain * alpha * |d - d_in|, cap), d_in read at the focus
/// point; output is the coverage-weighted disc average of the input. Throws
/// ConfigError when the frame has no disparity.
BokehResult bokeh_render(const Frame& frame, const ApertureSpec& spec,
                         const BokehParams& params = {});

/// Blur radius map alone (same rule as bokeh_render).
Image blur_radius_map(const Image& disparity, const ApertureSpec& spec,
                      const BokehParams& params = {});

// --- Clip pipeline ----------------------------------------------------------------

struct AugmentConfig {
  double p = 0.2;
  ParamRange aperture{0.0, 100.0};
  ParamRange distortion{-0.1, 0.1};
  ParamRange zoom{1.0, 3.0};
  double focus_margin = 0.1;  // focus path stays in the central (1 - 2 margin) of the frame
  int knots = 4;
  BokehParams bokeh;
  double sigmoid_prescale = 1.0;
  EffectFlags allowed{true, true, true};  // effects that dropout may enable

  void validate() const;
  static AugmentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Sampled parameters of one frame.
struct OpticalFrame {
  EffectFlags enabled;
  double zoom = 1.0;            // sampled zoom (1 when zoom is off)
  double crop = 1.0;            // distortion crop factor (1 when distortion is off)
  double effective_zoom = 1.0;  // zoom * crop, the centred zoom actually applied
  Distortion distortion;        // sampled coefficients, source-image normalization
  double alpha = 0.0;
  double focus_u = 0.0;         // focus point, source-image pixels
  double focus_v = 0.0;

  /// Source position sampled by output pixel p: distort((p - c) / effective_zoom + c).
  Eigen::Vector2d source_position(const Eigen::Vector2d& p, const CameraIntrinsics& intr) const;
};

struct OpticalTrajectory {
  EffectFlags flags;
  std::vector<OpticalFrame> frames;

  nlohmann::json to_json() const;
};

/// Dropout plus spline sampling for a clip of `frames` frames.
OpticalTrajectory sample_optical_trajectory(std::uint64_t seed, int frames,
                                            const CameraIntrinsics& intr,
                                            const AugmentConfig& cfg);

/// Camera describing the output frame produced from `base` by `params`.
FrameCamera emitted_camera(const FrameCamera& base, const OpticalFrame& params);

struct AugmentResult {
  std::vector<Frame> frames;
  std::vector<FrameCamera> cameras;
  OpticalTrajectory trajectory;
  std::vector<Image> blur_maps;  // empty unless bokeh fired
  std::vector<WarpField> warps;  // empty unless a geometric effect fired
};

/// Applies a fixed trajectory: bokeh, then distortion, then zoom (the latter
/// two composed into one resampling).
AugmentResult apply_optical_trajectory(std::span<const Frame> frames, const FrameCamera& base,
                                       const OpticalTrajectory& trajectory,
                                       const AugmentConfig& cfg, int threads = 1);

/// sample_optical_trajectory + apply_optical_trajectory. Output is a pure
/// function of (frames, base, seed, cfg), independent of `threads`.
AugmentResult augment_clip(std::span<const Frame> frames, const FrameCamera& base,
                           std::uint64_t seed, const AugmentConfig& cfg, int threads = 1);

}  // namespace akira
