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

// Synthetic scenes with exactly known optics and motion.
//
// The world is a textured plane z = plane_depth. The base texture is what the
// identity camera (fx = fy = W, centred principal point, no distortion) sees.
// Each frame is rendered by casting the ray of every pixel of the emitted
// camera (zoom, distortion, pose) onto the plane and sampling the texture,
// after bokeh has been applied to it in base-image coordinates. Ground-truth
// flow projects each pixel's plane point into the next camera.
//
// Bundle directory:
//   frames/%05d.png  disparity/%05d.pfm  flow/%05d.flo (N-1 files)
//   blur/%05d.pfm (bokeh only)  traj.tum  cameramap.akmp  params.jsonl
//   optical.jsonl  spec.json

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "akira/augment.hpp"
#include "akira/camera_io.hpp"
#include "akira/flow.hpp"
#include "akira/image.hpp"
#include "akira/trajectory.hpp"

namespace akira {

/// A per-frame scalar path. JSON forms: a number (constant), {"from": a,
/// "to": b} (linear), {"spline": [lo, hi]} (seeded spline draw) or an array
/// of per-frame values.
struct ParamPath {
  enum class Kind { kNone, kConstant, kRamp, kSpline, kValues };
  Kind kind = Kind::kNone;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> values;

  bool present() const noexcept { return kind != Kind::kNone; }
  /// `seed` is only used by spline paths.
  std::vector<double> evaluate(int frames, std::uint64_t seed, int knots) const;

  static ParamPath constant(double v) { return {Kind::kConstant, v, v, {}}; }
  static ParamPath ramp(double from, double to) { return {Kind::kRamp, from, to, {}}; }
  static ParamPath spline(double lo, double hi) { return {Kind::kSpline, lo, hi, {}}; }
};

struct DisparityRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // half-open pixel box
  double disparity = 1.0;
};

struct SceneSpec {
  int width = 256;
  int height = 256;
  int frames = 16;

  enum class Texture { kChecker, kNoise, kGradient };
  Texture texture = Texture::kChecker;
  int period = 8;      // checker square size, pixels
  double noise = 0.1;  // uniform noise mixed into the texture

  double background_disparity = 0.0;
  std::vector<DisparityRect> planes;

  ParamPath zoom, k1, k2, k3, alpha, focus_u, focus_v;
  bool clip_crop = true;  // one crop factor for the whole clip (largest per-frame value)
  int knots = 4;
  BokehParams bokeh;
  double sigmoid_prescale = 1.0;

  enum class Motion { kStatic, kLine, kArc };
  Motion motion = Motion::kStatic;
  Eigen::Vector3d step = Eigen::Vector3d::Zero();  // line: camera centre step per frame
  double arc_step_deg = 0.0;                       // arc: yaw step around the plane centre
  double plane_depth = 1.0;

  void validate() const;
  static SceneSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SynthBundle {
  SceneSpec spec;
  std::uint64_t seed = 0;
  std::vector<Frame> frames;
  std::vector<Image> blur_maps;  // empty without bokeh
  std::vector<FlowField> flows;  // frames.size() - 1 forward flows
  std::vector<FrameCamera> cameras;
  OpticalTrajectory optics;
  PoseTrajectory trajectory;     // camera-to-world, timestamps = frame index
  std::vector<CameraMap> camera_maps;
};

/// Base texture and disparity seen by the identity camera.
Frame base_scene(const SceneSpec& spec, std::uint64_t seed);

/// Per-frame optical parameters of the scene (before any pose).
OpticalTrajectory scene_optics(const SceneSpec& spec, std::uint64_t seed);

/// World-to-camera poses of the scene's motion.
std::vector<CameraPose> scene_poses(const SceneSpec& spec);

SynthBundle render_scene(const SceneSpec& spec, std::uint64_t seed, int threads = 1);

struct DollyZoomBundle {
  SynthBundle bundle;
  double l2_vs_pure_zoom = 0.0;         // camera maps vs the same clip without motion
  double l2_vs_pure_translation = 0.0;  // camera maps vs the same clip without zoom change
};

/// Zoom path plus line motion. The pure-zoom counterpart freezes the camera at
/// frame 0; the pure-translation one holds the zoom at its frame-0 value.
DollyZoomBundle dolly_zoom_bundle(const SceneSpec& spec, std::uint64_t seed, int threads = 1);

/// Channel-wise L2 distance between two equally sized camera-map sequences.
double camera_map_distance(const std::vector<CameraMap>& a, const std::vector<CameraMap>& b);

void write_bundle(const std::filesystem::path& dir, const SynthBundle& bundle);

/// Zero-padded five-digit file name, e.g. frame_name(3, ".png") == "00003.png".
std::string frame_name(std::size_t index, const char* ext);

}  // namespace akira
