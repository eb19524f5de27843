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

// Camera trajectories and pose-error metrics (APE, RPE, scale correction).
//
// Poses here are camera-to-world, as in TUM files: `translation` is the
// camera position and `rotation` the camera orientation in the world.
// TUM line: "timestamp tx ty tz qx qy qz qw"; '#' starts a comment.

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "akira/camera_model.hpp"

namespace akira {

struct PoseTrajectory {
  std::vector<double> timestamps;
  std::vector<CameraPose> poses;  // camera-to-world

  std::size_t size() const noexcept { return poses.size(); }
  /// Equal lengths, strictly increasing timestamps, proper rotations.
  void validate() const;
  /// Polyline length of the positions.
  double path_length() const;
};

/// Quaternions are normalized; a norm further than 1e-3 from one is a ParseError.
PoseTrajectory parse_tum(const std::string& text, const std::string& source = "<tum>");
PoseTrajectory read_tum(const std::filesystem::path& path);
std::string to_tum(const PoseTrajectory& traj);
void write_tum(const std::filesystem::path& path, const PoseTrajectory& traj);

/// Camera-to-world trajectory of world-to-camera poses.
PoseTrajectory from_world_to_camera(const std::vector<double>& timestamps,
                                    const std::vector<CameraPose>& poses);

struct PoseError {
  double trans = 0.0;    // mean, input units
  double rot_deg = 0.0;  // mean, degrees
  std::vector<double> trans_terms;
  std::vector<double> rot_terms;
};

/// Angle of a rotation matrix in degrees, cosine clamped to [-1, 1].
double rotation_angle_deg(const Eigen::Matrix3d& r);
/// Angle of A B^T in degrees via atan2; exactly 0 when A == B.
double rotation_angle_deg(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

/// Mean position error and mean angle of R_est R_ref^T.
PoseError ape(const PoseTrajectory& est, const PoseTrajectory& ref);

enum class RpeMode {
  kDifference,  // |dt_est - dt_ref| with dt_i = t_{i+1} - t_i; angle of dR_est dR_ref^T
  kSe3,         // error transform (T_ref_i^-1 T_ref_i+1)^-1 (T_est_i^-1 T_est_i+1)
};

/// N-1 consecutive terms. Needs N >= 2.
PoseError rpe(const PoseTrajectory& est, const PoseTrajectory& ref,
              RpeMode mode = RpeMode::kDifference);

/// path_length(ref) / path_length(est). Throws DegenerateTrajectory for a
/// zero-length estimate.
double scale_ratio(const PoseTrajectory& est, const PoseTrajectory& ref);
/// Positions multiplied by scale_ratio; rotations untouched.
PoseTrajectory scale_correct(const PoseTrajectory& est, const PoseTrajectory& ref);

struct EvalOptions {
  bool scale_correct = true;
  RpeMode mode = RpeMode::kDifference;
  bool with_ape = false;
};

struct TrajectoryReport {
  std::size_t n = 0;
  double scale_ratio = 1.0;
  PoseError rpe;
  std::optional<PoseError> ape;

  nlohmann::json to_json() const;
};

TrajectoryReport align_and_evaluate(const PoseTrajectory& est, const PoseTrajectory& ref,
                                    const EvalOptions& opts = {});

}  // namespace akira
