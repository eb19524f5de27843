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

// Dense optical flow fields and the Middlebury .flo container:
//   float32 LE 202021.25 ("PIEH"), i32 LE width, i32 LE height, then
//   row-major interleaved (du, dv) float32 LE.

#include <filesystem>
#include <span>
#include <vector>

#include "akira/augment.hpp"

namespace akira {

class FlowField {
 public:
  FlowField() = default;
  FlowField(int width, int height)
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height * 2, 0.0f) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

  float& du(int x, int y) { return data_[index(x, y)]; }
  float& dv(int x, int y) { return data_[index(x, y) + 1]; }
  float du(int x, int y) const { return data_[index(x, y)]; }
  float dv(int x, int y) const { return data_[index(x, y) + 1]; }

  /// Interleaved (du, dv).
  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  bool all_finite() const noexcept;
  FlowField scaled(float factor) const;

  friend bool operator==(const FlowField&, const FlowField&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * 2;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

/// Throws ParseError naming the file and byte offset on a bad magic or size.
FlowField read_flo(const std::filesystem::path& path);
void write_flo(const std::filesystem::path& path, const FlowField& flow);

/// Forward displacement of source content under an inverse sampling map:
/// output pixel p samples q = warp(p), so content at q moves by p - q. Each p
/// votes at round(q); votes are averaged. Source pixels without a vote have no
/// correspondence and are set to NaN, which the flow metrics skip.
/// The result is indexed by source pixels, of size src_width x src_height.
FlowField flow_from_warp(const WarpField& warp, int src_width, int src_height);
inline FlowField flow_from_warp(const WarpField& warp) {
  return flow_from_warp(warp, warp.width, warp.height);
}

/// Inverse map from frame b to frame a when both are warps of the same source
/// described by optical parameters: for each pixel p of b, the pixel of a that
/// shows the same source content. flow_from_warp of the result is the a -> b flow.
WarpField relative_warp(const OpticalFrame& a, const OpticalFrame& b,
                        const CameraIntrinsics& source_intrinsics);

}  // namespace akira
