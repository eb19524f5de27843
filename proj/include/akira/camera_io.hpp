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

// Per-frame camera parameter records (JSON / JSON-lines) and the binary
// camera-map container.
//
// JSON record keys: fx, fy, cx, cy, width, height, k1, k2, k3, alpha,
// focus_u, focus_v, R (9 reals, row-major), t (3 reals).
//
// Camera-map container ("AKMP"): 16-byte header
//   bytes 0..3   magic "AKMP"
//   bytes 4..7   u32 LE height
//   bytes 8..11  u32 LE width
//   bytes 12..15 u32 LE frame count
// followed by frame-major, channel-major float32 LE data (9 x H x W per frame).

#include <filesystem>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "akira/camera_model.hpp"

namespace akira {

struct FrameCamera {
  CameraIntrinsics intrinsics;
  Distortion distortion;
  ApertureSpec aperture;
  CameraPose pose;

  /// Frame-centred defaults: fx = fy = width, identity pose, focus at the centre.
  static FrameCamera centered(int width, int height);
  void validate() const;

  bool operator==(const FrameCamera&) const = default;
};

nlohmann::json to_json(const FrameCamera& camera);
/// Throws ParseError naming the missing or malformed key.
FrameCamera camera_from_json(const nlohmann::json& j);

/// One compact JSON object per line.
std::string to_json_lines(std::span<const FrameCamera> cameras);
std::vector<FrameCamera> parse_json_lines(const std::string& text);

void write_camera_params(const std::filesystem::path& path, std::span<const FrameCamera> cameras);
/// Accepts JSON-lines, or a single JSON object.
std::vector<FrameCamera> read_camera_params(const std::filesystem::path& path);

void write_camera_maps(const std::filesystem::path& path, std::span<const CameraMap> maps);
std::vector<CameraMap> read_camera_maps(const std::filesystem::path& path);

}  // namespace akira
