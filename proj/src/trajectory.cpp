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

#include "akira/trajectory.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "akira/error.hpp"
#include "binary_io.hpp"

namespace akira {

void PoseTrajectory::validate() const {
  if (timestamps.size() != poses.size()) {
    throw ConfigError("trajectory: timestamp and pose counts differ");
  }
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      std::ostringstream os;
      os << "trajectory: timestamps not strictly increasing at index " << i;
      throw ConfigError(os.str());
    }
  }
  for (const auto& p : poses) p.validate();
}

double PoseTrajectory::path_length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < poses.size(); ++i) {
    len += (poses[i].translation - poses[i - 1].translation).norm();
  }
  return len;
}

PoseTrajectory parse_tum(const std::string& text, const std::string& source) {
  PoseTrajectory traj;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double v[8];
    for (double& x : v) {
      if (!(fields >> x)) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": expected 8 numbers");
      }
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": trailing data");
    }
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": non-finite value");
      }
    }
    Eigen::Quaterniond q(v[7], v[4], v[5], v[6]);
    const double norm = q.norm();
    if (std::abs(norm - 1.0) > 1e-3) {
      std::ostringstream os;
      os << source << ":" << lineno << ": quaternion norm " << norm << " is not 1 (tolerance 1e-3)";
      throw ParseError(os.str());
    }
    q.normalize();
    CameraPose pose;
    pose.rotation = q.toRotationMatrix();
    pose.translation = {v[1], v[2], v[3]};
    traj.timestamps.push_back(v[0]);
    traj.poses.push_back(pose);
  }
  for (std::size_t i = 1; i < traj.timestamps.size(); ++i) {
    if (!(traj.timestamps[i] > traj.timestamps[i - 1])) {
      throw ParseError(source + ": timestamps not strictly increasing at pose " +
                       std::to_string(i));
    }
  }
  return traj;
}

PoseTrajectory read_tum(const std::filesystem::path& path) {
  return parse_tum(binary::read_text(path), path.string());
}

std::string to_tum(const PoseTrajectory& traj) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& p = traj.poses[i];
    Eigen::Quaterniond q(p.rotation);
    q.normalize();
    if (q.w() < 0.0) q.coeffs() *= -1.0;
    os << traj.timestamps[i] << ' ' << p.translation.x() << ' ' << p.translation.y() << ' '
       << p.translation.z() << ' ' << q.x() << ' ' << q.y() << ' ' << q.z() << ' ' << q.w()
       << '\n';
  }
  return os.str();
}

void write_tum(const std::filesystem::path& path, const PoseTrajectory& traj) {
  binary::write_text(path, "# timestamp tx ty tz qx qy qz qw\n" + to_tum(traj));
}

PoseTrajectory from_world_to_camera(const std::vector<double>& timestamps,
                                    const std::vector<CameraPose>& poses) {
  if (timestamps.size() != poses.size()) {
    throw ConfigError("trajectory: timestamp and pose counts differ");
  }
  PoseTrajectory t;
  t.timestamps = timestamps;
  for (const auto& p : poses) {
    CameraPose c2w;
    c2w.rotation = p.rotation.transpose();
    c2w.translation = p.center();
    t.poses.push_back(c2w);
  }
  return t;
}

double rotation_angle_deg(const Eigen::Matrix3d& r) {
  const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

double rotation_angle_deg(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  // atan2(sin, cos) stays accurate near 0 and 180 degrees. The product is
  // spelled out so that A A^T is exactly symmetric and A == B gives exactly 0.
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, 0) * b(j, 0) + a(i, 1) * b(j, 1) + a(i, 2) * b(j, 2);
  }
  const Eigen::Vector3d axis{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  return std::atan2(0.5 * axis.norm(), 0.5 * (r.trace() - 1.0)) * 180.0 / std::numbers::pi;
}

namespace {

void check_pair(const PoseTrajectory& est, const PoseTrajectory& ref) {
  if (est.timestamps.size() != est.poses.size() || ref.timestamps.size() != ref.poses.size()) {
    throw ConfigError("trajectory: timestamp and pose counts differ");
  }
  if (est.size() != ref.size()) {
    std::ostringstream os;
    os << "trajectory lengths differ: " << est.size() << " estimated vs " << ref.size()
       << " reference poses";
    throw TimestampMismatch(os.str());
  }
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (est.timestamps[i] != ref.timestamps[i]) {
      std::ostringstream os;
      os << std::setprecision(17) << "timestamps differ at pose " << i << ": "
         << est.timestamps[i] << " vs " << ref.timestamps[i];
      throw TimestampMismatch(os.str());
    }
  }
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

PoseError ape(const PoseTrajectory& est, const PoseTrajectory& ref) {
  check_pair(est, ref);
  if (est.size() == 0) throw DegenerateTrajectory("empty trajectory");
  PoseError e;
  for (std::size_t i = 0; i < est.size(); ++i) {
    e.trans_terms.push_back((est.poses[i].translation - ref.poses[i].translation).norm());
    e.rot_terms.push_back(
        rotation_angle_deg(est.poses[i].rotation, ref.poses[i].rotation));
  }
  e.trans = mean(e.trans_terms);
  e.rot_deg = mean(e.rot_terms);
  return e;
}

PoseError rpe(const PoseTrajectory& est, const PoseTrajectory& ref, RpeMode mode) {
  check_pair(est, ref);
  if (est.size() < 2) throw DegenerateTrajectory("relative pose error needs at least 2 poses");
  PoseError e;
  for (std::size_t i = 0; i + 1 < est.size(); ++i) {
    const auto& e0 = est.poses[i];
    const auto& e1 = est.poses[i + 1];
    const auto& r0 = ref.poses[i];
    const auto& r1 = ref.poses[i + 1];
    if (mode == RpeMode::kDifference) {
      const Eigen::Vector3d dte = e1.translation - e0.translation;
      const Eigen::Vector3d dtr = r1.translation - r0.translation;
      const Eigen::Matrix3d dre = e1.rotation * e0.rotation.transpose();
      const Eigen::Matrix3d drr = r1.rotation * r0.rotation.transpose();
      e.trans_terms.push_back((dte - dtr).norm());
      e.rot_terms.push_back(rotation_angle_deg(dre, drr));
    } else {
      // T = [R | t]; relative motion T_i^-1 T_{i+1}.
      const Eigen::Matrix3d re = e0.rotation.transpose() * e1.rotation;
      const Eigen::Vector3d te = e0.rotation.transpose() * (e1.translation - e0.translation);
      const Eigen::Matrix3d rr = r0.rotation.transpose() * r1.rotation;
      const Eigen::Vector3d tr = r0.rotation.transpose() * (r1.translation - r0.translation);
      const Eigen::Vector3d err_t = rr.transpose() * (te - tr);
      e.trans_terms.push_back(err_t.norm());
      e.rot_terms.push_back(rotation_angle_deg(re, rr));
    }
  }
  e.trans = mean(e.trans_terms);
  e.rot_deg = mean(e.rot_terms);
  return e;
}

double scale_ratio(const PoseTrajectory& est, const PoseTrajectory& ref) {
  const double le = est.path_length();
  if (!(le > 1e-12)) throw DegenerateTrajectory("estimated trajectory has zero length");
  return ref.path_length() / le;
}

PoseTrajectory scale_correct(const PoseTrajectory& est, const PoseTrajectory& ref) {
  const double k = scale_ratio(est, ref);
  PoseTrajectory out = est;
  for (auto& p : out.poses) p.translation *= k;
  return out;
}

nlohmann::json TrajectoryReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["scale_ratio"] = scale_ratio;
  j["rpe_t"] = rpe.trans;
  j["rpe_r_deg"] = rpe.rot_deg;
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < rpe.trans_terms.size(); ++i) {
    pairs.push_back({{"pair", i}, {"trans", rpe.trans_terms[i]}, {"rot_deg", rpe.rot_terms[i]}});
  }
  j["per_pair"] = std::move(pairs);
  if (ape) {
    j["ape_t"] = ape->trans;
    j["ape_r_deg"] = ape->rot_deg;
  }
  return j;
}

TrajectoryReport align_and_evaluate(const PoseTrajectory& est, const PoseTrajectory& ref,
                                    const EvalOptions& opts) {
  check_pair(est, ref);
  TrajectoryReport r;
  r.n = est.size();
  PoseTrajectory aligned = est;
  if (opts.scale_correct) {
    r.scale_ratio = scale_ratio(est, ref);
    for (auto& p : aligned.poses) p.translation *= r.scale_ratio;
  }
  r.rpe = rpe(aligned, ref, opts.mode);
  if (opts.with_ape) r.ape = ape(aligned, ref);
  return r;
}

}  // namespace akira
