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

// Direction-only flow similarity and its zoom / distortion specializations
// against analytic flows.

#include <cstdint>
#include <span>
#include <vector>

#include "akira/camera_model.hpp"
#include "akira/flow.hpp"
#include "akira/image.hpp"

namespace akira {

struct FlowSimConfig {
  double threshold = 0.5;  // pixels; both flows must exceed it
  int threads = 1;

  void validate() const;
};

struct FlowSimResult {
  double score = 0.0;  // mean cosine over valid pixels, in [-1, 1]
  double valid_fraction = 0.0;
  std::uint64_t valid = 0;
  bool empty = true;   // no valid pixel: score is 0 by definition
};

/// Pixels with a non-finite vector in either flow are never valid.
/// Throws DimensionMismatch on differing sizes.
FlowSimResult flowsim(const FlowField& ref, const FlowField& gen, const FlowSimConfig& cfg = {});

struct ClipScore {
  double score = 0.0;           // mean of the non-empty per-frame scores
  double valid_fraction = 0.0;  // mean over all frames
  bool empty = true;            // every frame had an empty mask
  std::size_t empty_frames = 0;
  std::vector<FlowSimResult> per_frame;
};

ClipScore aggregate(std::vector<FlowSimResult> per_frame);

/// (s - s') * (p - c): flow from a frame at zoom s' to one at zoom s.
FlowField theoretical_zoom_flow(double s, double s_prime, const CameraIntrinsics& intr, int height,
                                int width);

/// (p - c) * ((k1 - k1') r^2 + (k2 - k2') r^4 + (k3 - k3') r^6), r normalized
/// as in distort_pixel. Under the inverse-map warp convention this is the
/// first-order flow from a frame distorted by D to one distorted by D'.
FlowField theoretical_distortion_flow(const Distortion& d, const Distortion& d_prime,
                                      const CameraIntrinsics& intr, int height, int width);

FlowSimResult zoomsim(const FlowField& gen, double s, double s_prime, const CameraIntrinsics& intr,
                      const FlowSimConfig& cfg = {});
FlowSimResult distortsim(const FlowField& gen, const Distortion& d, const Distortion& d_prime,
                         const CameraIntrinsics& intr, const FlowSimConfig& cfg = {});

/// Fraction of pixels whose blur radius is below `threshold` pixels.
double focus_area(const Image& blur_radius, double threshold);

}  // namespace akira
