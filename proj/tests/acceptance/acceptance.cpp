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

// Acceptance runner: one PASS/FAIL line per criterion. Exit status is non-zero
// when any enforced criterion fails.

#include <Eigen/Geometry>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "akira/augment.hpp"
#include "akira/camera_io.hpp"
#include "akira/camera_model.hpp"
#include "akira/error.hpp"
#include "akira/flow.hpp"
#include "akira/flow_metrics.hpp"
#include "akira/image_io.hpp"
#include "akira/rng.hpp"
#include "akira/spline.hpp"
#include "akira/synth.hpp"
#include "akira/trajectory.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace akira;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and limits.
constexpr double kPluckerTol = 1e-9;
constexpr int kPluckerSamples = 100000;
constexpr double kPluckerSeconds = 10.0;
constexpr int kRoundTripDistortions = 100;
constexpr int kRoundTripPixels = 1000;
constexpr double kRoundTripTolPx = 1e-3;
constexpr double kRoundTripSeconds = 5.0;
constexpr double kHandExampleTol = 1e-12;
constexpr double kZoomOracleTol = 1e-5;
constexpr int kClosureClips = 20;
constexpr double kZoomSimMin = 0.99;
constexpr double kDistortSimMin = 0.95;
constexpr double kReversedMax = -0.95;
constexpr double kClosureSeconds = 120.0;
constexpr double kFlowSimTol = 1e-6;
constexpr double kSelfSimTol = 1e-12;
constexpr double kBokehOracleTol = 1e-5;
constexpr double kFocusThresholdPx = 1.0;
constexpr double kTrajZeroTol = 1e-9;
constexpr double kYawTolDeg = 1e-6;
constexpr int kDropoutTrials = 100000;
constexpr double kDropoutP = 0.2;
constexpr double kDropoutRate = 0.04;
constexpr double kDropoutTol = 0.005;
constexpr int kWorkersN = 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* name;
  // Known-unattainable criteria are still run and reported but do not affect
  // the exit status; see the note next to each one.
  bool enforced;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CameraPose random_pose(Rng& rng, double t_scale) {
  CameraPose p;
  const Eigen::Vector3d axis =
      Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)).normalized();
  p.rotation = Eigen::AngleAxisd(rng.uniform(-M_PI, M_PI), axis).toRotationMatrix();
  p.translation = {rng.uniform(-t_scale, t_scale), rng.uniform(-t_scale, t_scale),
                   rng.uniform(-t_scale, t_scale)};
  return p;
}

Distortion random_distortion(Rng& rng) {
  return {rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
}

// --- criteria ---------------------------------------------------------------------

Outcome plucker() {
  Rng rng(1001);
  double worst_md = 0, worst_norm = 0;
  for (int i = 0; i < kPluckerSamples; ++i) {
    const auto pose = random_pose(rng, 10.0);
    CameraIntrinsics k;
    k.width = 640;
    k.height = 480;
    k.fx = rng.uniform(100, 1500);
    k.fy = rng.uniform(100, 1500);
    k.cx = rng.uniform(200, 440);
    k.cy = rng.uniform(150, 330);
    const auto d = random_distortion(rng);
    const auto r = plucker_ray(rng.uniform(0, 639), rng.uniform(0, 479), pose, k, d);
    worst_md = std::max(worst_md, std::abs(r.moment.dot(r.direction)));
    worst_norm = std::max(worst_norm, std::abs(r.direction.norm() - 1.0));
  }
  // t = 0: the camera centre is the origin, so every moment is exactly zero.
  bool zero_moment = true;
  for (int i = 0; i < 20; ++i) {
    auto pose = random_pose(rng, 0.0);
    pose.translation.setZero();
    const auto k = CameraIntrinsics::centered(64, 48);
    const auto d = random_distortion(rng);
    const auto map = build_camera_map(pose, k, d, ApertureSpec{}, 48, 64);
    for (int c = 3; c < 6; ++c) {
      for (float v : map.plane(c)) zero_moment = zero_moment && v == 0.0f;
    }
    const auto r = plucker_ray(rng.uniform(0, 63), rng.uniform(0, 47), pose, k, d);
    zero_moment = zero_moment && r.moment == Eigen::Vector3d::Zero();
  }
  return {worst_md <= kPluckerTol && worst_norm <= kPluckerTol && zero_moment,
          "max|m.d|=" + fmt("%.2e", worst_md) + " max||d|-1|=" + fmt("%.2e", worst_norm) +
              " t=0 moment " + (zero_moment ? "exactly zero" : "NONZERO")};
}

Outcome hand_example() {
  CameraIntrinsics k;
  k.width = k.height = 200;
  k.fx = k.fy = 200;
  k.cx = k.cy = 100;
  const Distortion d{0.1, 0, 0};
  const auto p = distort_pixel({200, 100}, k, d);
  const auto back = undistort_pixel(p, k, d);
  const bool ok = std::abs(p.x() - 205.0) <= kHandExampleTol && p.y() == 100.0 &&
                  (back - Eigen::Vector2d(200, 100)).norm() < kRoundTripTolPx;
  return {ok, "(200,100) -> (" + fmt("%.12f", p.x()) + ", " + fmt("%.1f", p.y()) + ")"};
}

// Run exactly as stated: D uniform in [-0.1, 0.1]^3, pixels uniform over the
// frame. Some of these D compress the frame corners beyond the peak of the
// radial map, where no undistorted point exists; those pairs are counted as
// failures rather than filtered out.
Outcome distortion_round_trip() {
  const auto k = CameraIntrinsics::centered(256, 256);
  Rng rng(1002);
  int failures = 0, bad_d = 0, total = 0;
  double worst = 0;
  for (int i = 0; i < kRoundTripDistortions; ++i) {
    const auto d = random_distortion(rng);
    bool d_failed = false;
    for (int j = 0; j < kRoundTripPixels; ++j) {
      const Eigen::Vector2d p(rng.uniform(0, 255), rng.uniform(0, 255));
      ++total;
      try {
        const double e = (distort_pixel(undistort_pixel(p, k, d), k, d) - p).norm();
        worst = std::max(worst, e);
        if (!(e < kRoundTripTolPx)) {
          ++failures;
          d_failed = true;
        }
      } catch (const InversionFailure&) {
        ++failures;
        d_failed = true;
      }
    }
    bad_d += d_failed;
  }
  const auto hand = hand_example();
  return {failures == 0 && hand.pass,
          std::to_string(failures) + "/" + std::to_string(total) + " pairs fail (" +
              std::to_string(bad_d) + "/" + std::to_string(kRoundTripDistortions) +
              " D non-invertible over the frame), max error on invertible pairs " +
              fmt("%.2e", worst) + " px; hand example " + (hand.pass ? "ok " : "FAIL ") + hand.detail};
}

Outcome zoom_equivalence() {
  const auto f = support::checker_frame(256, 256);
  const auto k = CameraIntrinsics::centered(256, 256);
  double worst = 0;
  for (double s : {1.0, 1.5, 2.0, 3.0}) {
    const auto got = zoom_warp(f, s, k).frame.pixels;
    const auto want = oracle::crop_resize(f.pixels, s, k.cx, k.cy);
    for (std::size_t i = 0; i < got.data().size(); ++i) {
      worst = std::max(worst, std::abs(double(got.data()[i]) - double(want.data()[i])));
    }
  }
  return {worst <= kZoomOracleTol, "max channel error " + fmt("%.2e", worst)};
}

// The clip with its parameter sequence played backwards; each of its pairs is
// then scored against the change the forward clip claims for the same pair of
// states, so the generated effect runs opposite to the conditioning.
ParamPath reversed_values(const std::vector<double>& v) {
  ParamPath p;
  p.kind = ParamPath::Kind::kValues;
  p.values.assign(v.rbegin(), v.rend());
  return p;
}

Outcome optical_closure() {
  const auto load = [](const char* name) {
    const auto text = support::read_file(std::string(AKIRA_KIT_SPEC_DIR) + "/" + name + ".json");
    return SceneSpec::from_json(nlohmann::json::parse(text));
  };
  const SceneSpec zoom_spec = load("zoom-only");
  const SceneSpec dist_spec = load("distortion-only");
  double zmin = 1, dmin = 1, rmax = -1;

  for (int c = 0; c < kClosureClips; ++c) {
    const std::uint64_t seed = 5000 + c;
    // Zoom clip: params say frame t+1 is zoomed by fx_{t+1} / fx_t relative to t.
    const auto fwd = render_scene(zoom_spec, seed);
    std::vector<FlowSimResult> per;
    for (std::size_t t = 0; t + 1 < fwd.cameras.size(); ++t) {
      const auto& k0 = fwd.cameras[t].intrinsics;
      per.push_back(zoomsim(fwd.flows[t], fwd.cameras[t + 1].intrinsics.fx / k0.fx, 1.0, k0));
    }
    zmin = std::min(zmin, aggregate(per).score);

    std::vector<double> z;
    for (const auto& f : fwd.optics.frames) z.push_back(f.zoom);
    auto rev_spec = zoom_spec;
    rev_spec.zoom = reversed_values(z);
    const auto rev = render_scene(rev_spec, seed);
    const std::size_t n = fwd.cameras.size();
    per.clear();
    for (std::size_t t = 0; t + 1 < n; ++t) {
      // Reversed pair t shows forward states n-1-t -> n-2-t; the forward
      // conditioning for those two states is the change n-2-t -> n-1-t.
      const double claimed = fwd.cameras[n - 1 - t].intrinsics.fx / fwd.cameras[n - 2 - t].intrinsics.fx;
      per.push_back(zoomsim(rev.flows[t], claimed, 1.0, rev.cameras[t].intrinsics));
    }
    rmax = std::max(rmax, aggregate(per).score);

    // Distortion clip.
    const auto dfwd = render_scene(dist_spec, seed);
    per.clear();
    for (std::size_t t = 0; t + 1 < dfwd.cameras.size(); ++t) {
      per.push_back(distortsim(dfwd.flows[t], dfwd.cameras[t].distortion, dfwd.cameras[t + 1].distortion,
                               dfwd.cameras[t].intrinsics));
    }
    dmin = std::min(dmin, aggregate(per).score);

    std::vector<double> k1, k2;
    for (const auto& f : dfwd.optics.frames) {
      k1.push_back(f.distortion.k1);
      k2.push_back(f.distortion.k2);
    }
    auto drev_spec = dist_spec;
    drev_spec.k1 = reversed_values(k1);
    drev_spec.k2 = reversed_values(k2);
    const auto drev = render_scene(drev_spec, seed);
    per.clear();
    for (std::size_t t = 0; t + 1 < n; ++t) {
      per.push_back(distortsim(drev.flows[t], dfwd.cameras[n - 2 - t].distortion,
                               dfwd.cameras[n - 1 - t].distortion, drev.cameras[t].intrinsics));
    }
    rmax = std::max(rmax, aggregate(per).score);
  }
  return {zmin > kZoomSimMin && dmin > kDistortSimMin && rmax < kReversedMax,
          std::to_string(kClosureClips) + "+" + std::to_string(kClosureClips) +
              " clips 256x256x16: min ZoomSim " + fmt("%.4f", zmin) + ", min DistortSim " +
              fmt("%.4f", dmin) + ", max reversed " + fmt("%.4f", rmax)};
}

FlowField constant_flow(int w, int h, float u, float v) {
  FlowField f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      f.du(x, y) = u;
      f.dv(x, y) = v;
    }
  }
  return f;
}

Outcome flowsim_algebra() {
  Rng rng(1003);
  // Magnitudes in [10, 20] stay above the default 0.5 px threshold for every
  // tested lambda, so the valid mask is the same before and after scaling.
  auto random_flow = [&rng](int w, int h) {
    FlowField f(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double a = rng.uniform(0, 2 * M_PI), m = rng.uniform(10, 20);
        f.du(x, y) = static_cast<float>(m * std::cos(a));
        f.dv(x, y) = static_cast<float>(m * std::sin(a));
      }
    }
    return f;
  };
  const auto a = random_flow(64, 48), b = random_flow(64, 48);
  const double self = flowsim(a, a).score;
  const double anti = flowsim(a, a.scaled(-1.0f)).score;
  const double diag = flowsim(constant_flow(32, 32, 1, 0), constant_flow(32, 32, 1, 1)).score;
  const double base = flowsim(a, b).score;
  double drift = 0;
  for (float lambda : {0.1f, 10.0f}) {
    drift = std::max(drift, std::abs(flowsim(a.scaled(lambda), b.scaled(lambda)).score - base));
  }
  const bool ok = std::abs(self - 1) <= kSelfSimTol && std::abs(anti + 1) <= kSelfSimTol &&
                  std::abs(diag - std::sqrt(0.5)) <= kFlowSimTol && drift <= kFlowSimTol;
  return {ok, "self " + fmt("%.12f", self) + ", anti " + fmt("%.12f", anti) + ", 45deg " +
                  fmt("%.7f", diag) + ", scale drift " + fmt("%.1e", drift)};
}

Outcome bokeh() {
  const int w = 96, h = 96;
  const auto f = support::two_plane_frame(w, h, 24, 24, 72, 72, 1.0f, 0.0f);
  const auto closed = bokeh_render(f, {0.0, 47.5, 47.5});
  const bool identity =
      std::memcmp(closed.frame.pixels.data().data(), f.pixels.data().data(), f.pixels.data().size() * 4) == 0;
  std::vector<double> areas;
  double worst = 0;
  for (double alpha : {0.0, 30.0, 100.0}) {
    const auto r = bokeh_render(f, {alpha, 47.5, 47.5});
    areas.push_back(focus_area(r.blur_radius, kFocusThresholdPx));
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < 3; ++c) {
          const double want = oracle::disc_average(f.pixels, x, y, c, r.blur_radius.at(x, y));
          worst = std::max(worst, std::abs(want - r.frame.pixels.at(x, y, c)));
        }
      }
    }
  }
  const bool monotone = areas[1] <= areas[0] && areas[2] <= areas[1];
  return {identity && monotone && worst <= kBokehOracleTol,
          std::string("alpha=0 ") + (identity ? "identical" : "DIFFERS") + ", focus_area " +
              fmt("%.4f", areas[0]) + " >= " + fmt("%.4f", areas[1]) + " >= " + fmt("%.4f", areas[2]) +
              ", oracle max error " + fmt("%.2e", worst)};
}

PoseTrajectory random_walk(std::uint64_t seed, int n) {
  Rng rng(seed);
  PoseTrajectory t;
  CameraPose p;
  for (int i = 0; i < n; ++i) {
    p.translation += Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.5, 1.5));
    p.rotation = Eigen::AngleAxisd(rng.uniform(-0.1, 0.1), Eigen::Vector3d::UnitY()) * p.rotation;
    t.timestamps.push_back(i);
    t.poses.push_back(p);
  }
  return t;
}

Outcome trajectory() {
  const int n = 24;
  const auto ref = random_walk(1004, n);
  // Identity.
  const auto id = align_and_evaluate(ref, ref, {true, RpeMode::kDifference, true});
  const auto id_se3 = rpe(ref, ref, RpeMode::kSe3);
  const bool identity = id.rpe.trans == 0 && id.rpe.rot_deg == 0 && id.ape->trans == 0 &&
                        id.ape->rot_deg == 0 && id_se3.trans == 0 && id_se3.rot_deg == 0;
  // Scale.
  double scale_worst = 0;
  for (double lambda : {0.1, 2.0, 10.0}) {
    auto est = ref;
    for (auto& p : est.poses) p.translation *= lambda;
    scale_worst = std::max(scale_worst, align_and_evaluate(est, ref).rpe.trans);
  }
  // Locality: one corrupted pose, then a drift from the same pose on.
  auto one = ref;
  one.poses[9].translation += Eigen::Vector3d(0.4, -0.3, 0.2);
  int rpe_hits = 0, ape_hits = 0;
  for (double t : rpe(one, ref).trans_terms) rpe_hits += t > kTrajZeroTol;
  auto drift = ref;
  for (int i = 9; i < n; ++i) drift.poses[i].translation += Eigen::Vector3d(0.4, -0.3, 0.2);
  for (double t : ape(drift, ref).trans_terms) ape_hits += t > kTrajZeroTol;
  int drift_rpe_hits = 0;
  for (double t : rpe(drift, ref).trans_terms) drift_rpe_hits += t > kTrajZeroTol;
  // Global yaw.
  auto yawed = ref;
  const Eigen::Matrix3d yaw = Eigen::AngleAxisd(10.0 * M_PI / 180.0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  for (auto& p : yawed.poses) p.rotation = yaw * p.rotation;
  const double yaw_deg = ape(yawed, ref).rot_deg;

  const bool ok = identity && scale_worst <= kTrajZeroTol && rpe_hits == 2 && ape_hits == n - 9 &&
                  drift_rpe_hits == 1 && std::abs(yaw_deg - 10.0) <= kYawTolDeg;
  return {ok, std::string("identity ") + (identity ? "0" : "NONZERO") + ", scaled RPE-t max " +
                  fmt("%.1e", scale_worst) + ", corruption hits RPE " + std::to_string(rpe_hits) +
                  " / drift hits APE " + std::to_string(ape_hits) + " of " + std::to_string(n) +
                  " (RPE " + std::to_string(drift_rpe_hits) + "), yaw APE-rot " + fmt("%.9f", yaw_deg)};
}

Outcome dropout() {
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < kDropoutTrials; ++i) {
    const auto f = apply_dropout(derive_seed(1005, "trial", i), kDropoutP);
    counts[0] += f.bokeh;
    counts[1] += f.distortion;
    counts[2] += f.zoom;
  }
  double worst = 0;
  std::string rates;
  for (int c : counts) {
    const double r = double(c) / kDropoutTrials;
    worst = std::max(worst, std::abs(r - kDropoutRate));
    rates += fmt("%.4f ", r);
  }
  return {worst <= kDropoutTol, "bokeh/distortion/zoom rates " + rates + "(p=0.2)"};
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome determinism() {
  support::TempDir dir("acceptance_det");
  const std::string spec_dir = AKIRA_KIT_SPEC_DIR;
  // Shared inputs, produced once.
  const fs::path in = dir / "in";
  const auto prep = support::run_cli("--seed 3 synth -s " + q(spec_dir + "/bokeh-two-plane.json") + " -o " + q(in));
  if (prep.exit_code != 0) return {false, "input bundle failed: " + prep.err};
  support::write_file(dir / "aug.json", R"({"p": 1.0})");
  support::write_file(dir / "ref.tum", support::read_file(in / "traj.tum"));

  struct Cmd {
    std::string name, args;
    bool dir_output;
  };
  auto commands = [&](const fs::path& out) {
    std::vector<Cmd> c;
    for (const char* s : {"zoom-only", "distortion-only", "bokeh-two-plane"}) {
      c.push_back({std::string("synth ") + s, "synth -s " + q(spec_dir + "/" + s + ".json") + " -o " + q(out / s), true});
    }
    c.push_back({"synth --dolly", "synth --dolly -s " + q(spec_dir + "/dolly-zoom.json") + " -o " + q(out / "dolly"), true});
    c.push_back({"augment", "augment -i " + q(in) + " -c " + q(dir / "aug.json") + " -o " + q(out / "aug"), true});
    c.push_back({"cameramap", "cameramap -p " + q(in / "params.jsonl") + " -o " + q(out / "maps.akmp"), false});
    c.push_back({"flowsim", "flowsim --ref " + q(in / "flow") + " --gen " + q(in / "flow") + " --report " + q(out / "flowsim.json"), false});
    c.push_back({"zoomsim", "zoomsim -p " + q(in / "params.jsonl") + " --gen " + q(in / "flow") + " --report " + q(out / "zoomsim.json"), false});
    c.push_back({"distortsim", "distortsim -p " + q(in / "params.jsonl") + " --gen " + q(in / "flow") + " --report " + q(out / "distortsim.json"), false});
    c.push_back({"focusarea", "focusarea --blur " + q(in / "blur") + " --report " + q(out / "focus.json"), false});
    c.push_back({"rpe", "rpe --ape --est " + q(in / "traj.tum") + " --ref " + q(dir / "ref.tum") + " --report " + q(out / "rpe.json"), false});
    return c;
  };

  std::map<std::string, std::string> digests[2];
  const int workers[2] = {1, kWorkersN};
  for (int w = 0; w < 2; ++w) {
    const fs::path out = dir / ("w" + std::to_string(workers[w]));
    fs::create_directories(out);
    for (const auto& c : commands(out)) {
      const auto r = support::run_cli("--seed 42 --threads " + std::to_string(workers[w]) + " " + c.args);
      if (r.exit_code != 0) return {false, c.name + " failed: " + r.err};
      // Stdout echoes the per-run output path; compare it with that path masked.
      std::string text = r.out;
      for (std::size_t at; (at = text.find(out.string())) != std::string::npos;) {
        text.replace(at, out.string().size(), "<out>");
      }
      digests[w][c.name + " stdout"] = support::sha256_hex(text);
    }
    for (const auto& [rel, h] : support::tree_digest(out)) digests[w][rel] = h;
  }
  std::vector<std::string> differing;
  for (const auto& [k, h] : digests[0]) {
    const auto it = digests[1].find(k);
    if (it == digests[1].end() || it->second != h) differing.push_back(k);
  }
  const bool ok = differing.empty() && digests[0].size() == digests[1].size();
  std::string detail = std::to_string(digests[0].size()) + " outputs of " +
                       std::to_string(commands(dir.path()).size()) + " commands, threads 1 vs " +
                       std::to_string(kWorkersN);
  if (!differing.empty()) detail += "; first differing: " + differing.front();
  return {ok, detail};
}

Outcome formats() {
  support::TempDir dir("acceptance_fmt");
  Rng rng(1006);
  FlowField f(53, 31);
  for (float& v : f.data()) v = static_cast<float>(rng.uniform(-100, 100));
  f.data()[5] = -0.0f;
  f.data()[6] = std::numeric_limits<float>::denorm_min();
  write_flo(dir / "a.flo", f);
  const auto bytes = support::read_file(dir / "a.flo");
  float magic = 0;
  std::memcpy(&magic, bytes.data(), 4);
  const auto back = read_flo(dir / "a.flo");
  const bool flo_ok = magic == 202021.25f && bytes.substr(0, 4) == "PIEH" &&
                      std::memcmp(back.data().data(), f.data().data(), f.data().size() * 4) == 0;

  // TUM: quaternion norm 1.002 is rejected, 1.0005 is accepted.
  bool rejected = false;
  try {
    parse_tum("0 0 0 0 0 0 0 1.002\n", "bad.tum");
  } catch (const ParseError&) {
    rejected = true;
  }
  bool accepted = true;
  try {
    parse_tum("0 0 0 0 0 0 0 1.0005\n", "ok.tum");
  } catch (const Error&) {
    accepted = false;
  }
  return {flo_ok && rejected && accepted,
          std::string(".flo ") + (flo_ok ? "bit-exact, magic 202021.25" : "MISMATCH") +
              "; TUM |q|=1.002 " + (rejected ? "rejected" : "ACCEPTED") + ", |q|=1.0005 " +
              (accepted ? "accepted" : "REJECTED")};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"plucker", true,
       [] {
         const auto t0 = std::chrono::steady_clock::now();
         auto o = plucker();
         const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
         o.pass = o.pass && s < kPluckerSeconds;
         o.detail += ", " + fmt("%.2f", s) + " s (limit 10 s)";
         return o;
       }},
      // Known unattainable as stated: see the note on distortion_round_trip.
      // The frame-invertible subset is enforced by the unit tests.
      {"distortion-round-trip", false,
       [] {
         const auto t0 = std::chrono::steady_clock::now();
         auto o = distortion_round_trip();
         const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
         o.pass = o.pass && s < kRoundTripSeconds;
         o.detail += ", " + fmt("%.2f", s) + " s (limit 5 s)";
         return o;
       }},
      {"distortion-hand-example", true, hand_example},
      {"zoom-equivalence", true, zoom_equivalence},
      {"optical-closure", true,
       [] {
         const auto t0 = std::chrono::steady_clock::now();
         auto o = optical_closure();
         const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
         o.pass = o.pass && s < kClosureSeconds;
         o.detail += ", " + fmt("%.1f", s) + " s (limit 120 s)";
         return o;
       }},
      {"flowsim-algebra", true, flowsim_algebra},
      {"bokeh", true, bokeh},
      {"trajectory-metrics", true, trajectory},
      {"dropout", true, dropout},
      {"determinism", true, determinism},
      {"format-fidelity", true, formats},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-24s %s [%.2fs]%s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), s,
                c.enforced ? "" : " (known unattainable, not enforced)");
    std::fflush(stdout);
    if (!o.pass && c.enforced) ++failed;
  }
  std::printf("%d enforced criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
