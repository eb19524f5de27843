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

#include "akira/synth.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "akira/error.hpp"
#include "akira/image_io.hpp"
#include "akira/kernels/kernels.hpp"
#include "akira/parallel.hpp"
#include "akira/rng.hpp"
#include "binary_io.hpp"

namespace akira {

using nlohmann::json;

// --- ParamPath ------------------------------------------------------------------

std::vector<double> ParamPath::evaluate(int frames, std::uint64_t seed, int knots) const {
  std::vector<double> out(static_cast<std::size_t>(frames), a);
  switch (kind) {
    case Kind::kNone:
    case Kind::kConstant:
      break;
    case Kind::kRamp:
      for (int i = 0; i < frames; ++i) {
        const double t = frames > 1 ? static_cast<double>(i) / (frames - 1) : 0.0;
        out[i] = a + (b - a) * t;
      }
      break;
    case Kind::kSpline:
      out = sample_spline_trajectory(seed, frames, a, b, knots);
      break;
    case Kind::kValues:
      if (values.size() != static_cast<std::size_t>(frames)) {
        throw ConfigError("per-frame value list has " + std::to_string(values.size()) +
                          " entries for " + std::to_string(frames) + " frames");
      }
      out = values;
      break;
  }
  return out;
}

namespace {

ParamPath path_from_json(const json& j, const std::string& key) {
  if (j.is_number()) return ParamPath::constant(j.get<double>());
  if (j.is_array()) {
    ParamPath p;
    p.kind = ParamPath::Kind::kValues;
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("'" + key + "' values must be numbers");
      p.values.push_back(v.get<double>());
    }
    return p;
  }
  if (j.is_object()) {
    if (j.contains("from") && j.contains("to") && j.size() == 2 && j["from"].is_number() &&
        j["to"].is_number()) {
      return ParamPath::ramp(j["from"].get<double>(), j["to"].get<double>());
    }
    if (j.contains("spline") && j.size() == 1) {
      const auto& r = j["spline"];
      if (r.is_array() && r.size() == 2 && r[0].is_number() && r[1].is_number()) {
        return ParamPath::spline(r[0].get<double>(), r[1].get<double>());
      }
    }
  }
  throw ConfigError("'" + key +
                    "' must be a number, a value list, {\"from\", \"to\"} or {\"spline\": [lo, hi]}");
}

json path_to_json(const ParamPath& p) {
  switch (p.kind) {
    case ParamPath::Kind::kConstant:
      return p.a;
    case ParamPath::Kind::kRamp:
      return {{"from", p.a}, {"to", p.b}};
    case ParamPath::Kind::kSpline:
      return {{"spline", {p.a, p.b}}};
    case ParamPath::Kind::kValues:
      return p.values;
    case ParamPath::Kind::kNone:
      break;
  }
  return nullptr;
}

double num(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("scene key '" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("scene key '" + key + "' must be an integer");
  return j.get<int>();
}

const char* texture_name(SceneSpec::Texture t) {
  switch (t) {
    case SceneSpec::Texture::kChecker: return "checker";
    case SceneSpec::Texture::kNoise: return "noise";
    case SceneSpec::Texture::kGradient: return "gradient";
  }
  return "checker";
}

const char* motion_name(SceneSpec::Motion m) {
  switch (m) {
    case SceneSpec::Motion::kStatic: return "static";
    case SceneSpec::Motion::kLine: return "line";
    case SceneSpec::Motion::kArc: return "arc";
  }
  return "static";
}

}  // namespace

// --- SceneSpec --------------------------------------------------------------------

void SceneSpec::validate() const {
  if (width < 8 || height < 8 || width > 4096 || height > 4096) {
    throw ConfigError("scene size must be within [8, 4096]");
  }
  if (frames < 2) throw ConfigError("scene needs at least 2 frames");
  if (period < 1) throw ConfigError("texture period must be >= 1");
  if (!(noise >= 0.0 && noise <= 1.0)) throw ConfigError("texture noise must be in [0, 1]");
  if (!(background_disparity >= 0.0 && background_disparity <= 1.0)) {
    throw ConfigError("background disparity must be in [0, 1]");
  }
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto& r = planes[i];
    if (!(0 <= r.x0 && r.x0 < r.x1 && r.x1 <= width && 0 <= r.y0 && r.y0 < r.y1 &&
          r.y1 <= height)) {
      throw ConfigError("plane " + std::to_string(i) + " is empty or outside the frame");
    }
    if (!(r.disparity >= 0.0 && r.disparity <= 1.0)) {
      throw ConfigError("plane " + std::to_string(i) + " disparity must be in [0, 1]");
    }
  }
  if (knots < 2) throw ConfigError("knots must be >= 2");
  if (!(bokeh.gain >= 0.0 && bokeh.cap >= 0.0 && bokeh.cap <= 256.0)) {
    throw ConfigError("bokeh gain/cap out of range");
  }
  if (!(sigmoid_prescale > 0.0)) throw ConfigError("sigmoid_prescale must be positive");
  if (!(plane_depth > 0.0 && std::isfinite(plane_depth))) {
    throw ConfigError("plane_depth must be positive");
  }
  if (!step.allFinite() || !std::isfinite(arc_step_deg)) throw ConfigError("motion must be finite");
  if ((focus_u.present() || focus_v.present()) && !alpha.present()) {
    throw ConfigError("focus paths need an alpha path");
  }
  auto check_path = [&](const ParamPath& p, const char* name, double lo, double hi) {
    if (!p.present()) return;
    std::vector<double> v{p.a, p.b};
    if (p.kind == ParamPath::Kind::kValues) {
      if (p.values.size() != static_cast<std::size_t>(frames)) {
        throw ConfigError(std::string(name) + " lists " + std::to_string(p.values.size()) +
                          " values for " + std::to_string(frames) + " frames");
      }
      v = p.values;
    }
    for (double x : v) {
      if (!(x >= lo && x <= hi)) {
        throw ConfigError(std::string(name) + " value " + std::to_string(x) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
    }
  };
  check_path(zoom, "zoom", 1.0, std::numeric_limits<double>::max());
  check_path(k1, "k1", -1.0, 1.0);
  check_path(k2, "k2", -1.0, 1.0);
  check_path(k3, "k3", -1.0, 1.0);
  check_path(alpha, "alpha", 0.0, 100.0);
  check_path(focus_u, "focus_u", 0.0, width - 1.0);
  check_path(focus_v, "focus_v", 0.0, height - 1.0);
}

SceneSpec SceneSpec::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scene description must be a JSON object");
  SceneSpec s;
  for (const auto& [key, v] : j.items()) {
    if (key == "seed" || key == "name" || key == "description") {
      continue;
    } else if (key == "width") {
      s.width = integer(v, key);
    } else if (key == "height") {
      s.height = integer(v, key);
    } else if (key == "frames") {
      s.frames = integer(v, key);
    } else if (key == "texture") {
      if (!v.is_object()) throw ConfigError("'texture' must be an object");
      for (const auto& [tk, tv] : v.items()) {
        if (tk == "kind") {
          const std::string k = tv.is_string() ? tv.get<std::string>() : "";
          if (k == "checker") {
            s.texture = Texture::kChecker;
          } else if (k == "noise") {
            s.texture = Texture::kNoise;
          } else if (k == "gradient") {
            s.texture = Texture::kGradient;
          } else {
            throw ConfigError("texture.kind must be checker, noise or gradient");
          }
        } else if (tk == "period") {
          s.period = integer(tv, "texture.period");
        } else if (tk == "noise") {
          s.noise = num(tv, "texture.noise");
        } else {
          throw ConfigError("unknown scene key 'texture." + tk + "'");
        }
      }
    } else if (key == "background_disparity") {
      s.background_disparity = num(v, key);
    } else if (key == "planes") {
      if (!v.is_array()) throw ConfigError("'planes' must be an array");
      for (const auto& p : v) {
        if (!p.is_object()) throw ConfigError("each plane must be an object");
        DisparityRect r;
        r.x0 = integer(p.value("x0", json()), "planes.x0");
        r.y0 = integer(p.value("y0", json()), "planes.y0");
        r.x1 = integer(p.value("x1", json()), "planes.x1");
        r.y1 = integer(p.value("y1", json()), "planes.y1");
        r.disparity = num(p.value("disparity", json()), "planes.disparity");
        s.planes.push_back(r);
      }
    } else if (key == "zoom") {
      s.zoom = path_from_json(v, key);
    } else if (key == "k1") {
      s.k1 = path_from_json(v, key);
    } else if (key == "k2") {
      s.k2 = path_from_json(v, key);
    } else if (key == "k3") {
      s.k3 = path_from_json(v, key);
    } else if (key == "alpha") {
      s.alpha = path_from_json(v, key);
    } else if (key == "focus_u") {
      s.focus_u = path_from_json(v, key);
    } else if (key == "focus_v") {
      s.focus_v = path_from_json(v, key);
    } else if (key == "crop") {
      const std::string c = v.is_string() ? v.get<std::string>() : "";
      if (c == "clip") {
        s.clip_crop = true;
      } else if (c == "frame") {
        s.clip_crop = false;
      } else {
        throw ConfigError("'crop' must be \"clip\" or \"frame\"");
      }
    } else if (key == "knots") {
      s.knots = integer(v, key);
    } else if (key == "bokeh_gain") {
      s.bokeh.gain = num(v, key);
    } else if (key == "bokeh_cap") {
      s.bokeh.cap = num(v, key);
    } else if (key == "sigmoid_prescale") {
      s.sigmoid_prescale = num(v, key);
    } else if (key == "plane_depth") {
      s.plane_depth = num(v, key);
    } else if (key == "motion") {
      if (!v.is_object()) throw ConfigError("'motion' must be an object");
      for (const auto& [mk, mv] : v.items()) {
        if (mk == "kind") {
          const std::string k = mv.is_string() ? mv.get<std::string>() : "";
          if (k == "static") {
            s.motion = Motion::kStatic;
          } else if (k == "line") {
            s.motion = Motion::kLine;
          } else if (k == "arc") {
            s.motion = Motion::kArc;
          } else {
            throw ConfigError("motion.kind must be static, line or arc");
          }
        } else if (mk == "step") {
          if (!mv.is_array() || mv.size() != 3) throw ConfigError("motion.step must be [x, y, z]");
          s.step = {num(mv[0], "motion.step"), num(mv[1], "motion.step"),
                    num(mv[2], "motion.step")};
        } else if (mk == "step_deg") {
          s.arc_step_deg = num(mv, "motion.step_deg");
        } else {
          throw ConfigError("unknown scene key 'motion." + mk + "'");
        }
      }
    } else {
      throw ConfigError("unknown scene key '" + key + "'");
    }
  }
  s.validate();
  return s;
}

json SceneSpec::to_json() const {
  json j;
  j["width"] = width;
  j["height"] = height;
  j["frames"] = frames;
  j["texture"] = {{"kind", texture_name(texture)}, {"period", period}, {"noise", noise}};
  j["background_disparity"] = background_disparity;
  json p = json::array();
  for (const auto& r : planes) {
    p.push_back({{"x0", r.x0}, {"y0", r.y0}, {"x1", r.x1}, {"y1", r.y1}, {"disparity", r.disparity}});
  }
  j["planes"] = std::move(p);
  const std::pair<const char*, const ParamPath*> paths[] = {
      {"zoom", &zoom}, {"k1", &k1},       {"k2", &k2},          {"k3", &k3},
      {"alpha", &alpha}, {"focus_u", &focus_u}, {"focus_v", &focus_v}};
  for (const auto& [name, path] : paths) {
    if (path->present()) j[name] = path_to_json(*path);
  }
  j["crop"] = clip_crop ? "clip" : "frame";
  j["knots"] = knots;
  j["bokeh_gain"] = bokeh.gain;
  j["bokeh_cap"] = bokeh.cap;
  j["sigmoid_prescale"] = sigmoid_prescale;
  j["plane_depth"] = plane_depth;
  j["motion"] = {{"kind", motion_name(motion)},
                 {"step", {step.x(), step.y(), step.z()}},
                 {"step_deg", arc_step_deg}};
  return j;
}

// --- Scene construction ----------------------------------------------------------

Frame base_scene(const SceneSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int w = spec.width, h = spec.height;
  Frame f;
  f.pixels = Image(w, h, 3);
  Rng rng(derive_seed(seed, "texture"));
  static constexpr float kLight[3] = {0.85f, 0.75f, 0.60f};
  static constexpr float kDark[3] = {0.15f, 0.25f, 0.35f};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double pattern = 0.0;
        switch (spec.texture) {
          case SceneSpec::Texture::kChecker:
            pattern = ((x / spec.period + y / spec.period) % 2) ? kLight[c] : kDark[c];
            break;
          case SceneSpec::Texture::kNoise:
            pattern = 0.5;
            break;
          case SceneSpec::Texture::kGradient:
            pattern = c == 0 ? x / (w - 1.0) : (c == 1 ? y / (h - 1.0) : 0.5);
            break;
        }
        const double noise_weight = spec.texture == SceneSpec::Texture::kNoise ? 1.0 : spec.noise;
        const double v = (1.0 - noise_weight) * pattern + noise_weight * rng.uniform();
        f.pixels.at(x, y, c) = static_cast<float>(v);
      }
    }
  }
  Image disp(w, h, 1, static_cast<float>(spec.background_disparity));
  for (const auto& r : spec.planes) {
    for (int y = r.y0; y < r.y1; ++y) {
      for (int x = r.x0; x < r.x1; ++x) disp.at(x, y) = static_cast<float>(r.disparity);
    }
  }
  f.disparity = std::move(disp);
  return f;
}

OpticalTrajectory scene_optics(const SceneSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = spec.frames;
  const auto intr = CameraIntrinsics::centered(spec.width, spec.height);
  OpticalTrajectory traj;
  traj.flags.zoom = spec.zoom.present();
  traj.flags.distortion = spec.k1.present() || spec.k2.present() || spec.k3.present();
  traj.flags.bokeh = spec.alpha.present();
  traj.frames.assign(static_cast<std::size_t>(n), OpticalFrame{});

  auto eval = [&](const ParamPath& p, const char* tag, double fallback) {
    if (!p.present()) return std::vector<double>(static_cast<std::size_t>(n), fallback);
    return p.evaluate(n, derive_seed(seed, tag), spec.knots);
  };
  const auto zoom = eval(spec.zoom, "zoom", 1.0);
  const auto k1 = eval(spec.k1, "k1", 0.0);
  const auto k2 = eval(spec.k2, "k2", 0.0);
  const auto k3 = eval(spec.k3, "k3", 0.0);
  const auto alpha = eval(spec.alpha, "alpha", 0.0);
  const auto fu = eval(spec.focus_u, "focus_u", intr.cx);
  const auto fv = eval(spec.focus_v, "focus_v", intr.cy);

  double clip_crop = 1.0;
  for (int t = 0; t < n; ++t) {
    auto& f = traj.frames[t];
    f.enabled = traj.flags;
    if (!(zoom[t] >= 1.0 && std::isfinite(zoom[t]))) {
      throw OutOfRange("zoom " + std::to_string(zoom[t]) + " at frame " + std::to_string(t) +
                       " is below 1");
    }
    if (!(alpha[t] >= 0.0)) throw ConfigError("alpha must be >= 0");
    f.zoom = zoom[t];
    f.distortion = {k1[t], k2[t], k3[t]};
    f.crop = traj.flags.distortion ? distortion_crop_factor(f.distortion, intr) : 1.0;
    clip_crop = std::max(clip_crop, f.crop);
    f.alpha = alpha[t];
    f.focus_u = fu[t];
    f.focus_v = fv[t];
    ApertureSpec{f.alpha, f.focus_u, f.focus_v}.validate(intr);
  }
  for (auto& f : traj.frames) {
    if (spec.clip_crop) f.crop = clip_crop;
    f.effective_zoom = f.zoom * f.crop;
  }
  return traj;
}

std::vector<CameraPose> scene_poses(const SceneSpec& spec) {
  std::vector<CameraPose> poses;
  for (int t = 0; t < spec.frames; ++t) {
    CameraPose p;
    Eigen::Vector3d centre = Eigen::Vector3d::Zero();
    if (spec.motion == SceneSpec::Motion::kLine) {
      centre = static_cast<double>(t) * spec.step;
    } else if (spec.motion == SceneSpec::Motion::kArc) {
      // Orbit in the x-z plane around the plane point on the optical axis.
      const double th = t * spec.arc_step_deg * std::numbers::pi / 180.0;
      const double r = spec.plane_depth;
      centre = {r * std::sin(th), 0.0, r - r * std::cos(th)};
      p.rotation = Eigen::AngleAxisd(-th, Eigen::Vector3d::UnitY()).toRotationMatrix().transpose();
    }
    p.translation = -(p.rotation * centre);
    poses.push_back(p);
  }
  return poses;
}

namespace {

// Plane point seen by pixel (u, v) of `cam`, if the ray hits the plane in front.
std::optional<Eigen::Vector3d> plane_point(const FrameCamera& cam, double u, double v,
                                           double depth) {
  const auto& k = cam.intrinsics;
  const double hd = k.half_diagonal();
  const double du = u - k.cx, dv = v - k.cy;
  const double g = cam.distortion.factor((du * du + dv * dv) / (hd * hd));
  const Eigen::Vector3d dir_cam{du * g / k.fx, dv * g / k.fy, 1.0};
  const Eigen::Vector3d dir = cam.pose.rotation.transpose() * dir_cam;
  const Eigen::Vector3d o = cam.pose.center();
  if (!(std::abs(dir.z()) > 1e-12)) return std::nullopt;
  const double lambda = (depth - o.z()) / dir.z();
  if (!(lambda > 0.0)) return std::nullopt;
  return o + lambda * dir;
}

Image remap_image(const Image& src, const std::vector<float>& mx, const std::vector<float>& my) {
  Image dst(src.width(), src.height(), src.channels());
  kernels::active_kernels().remap_bilinear(src.data().data(), src.width(), src.height(),
                                           src.channels(), mx.data(), my.data(), mx.size(),
                                           dst.data().data());
  return dst;
}

FlowField ground_truth_flow(const FrameCamera& a, const FrameCamera& b, double depth) {
  const auto& k = a.intrinsics;
  FlowField flow(k.width, k.height);
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      const auto point = plane_point(a, x, y, depth);
      if (!point) continue;
      const Eigen::Vector3d pc = b.pose.rotation * *point + b.pose.translation;
      if (!(pc.z() > 1e-9)) continue;
      const auto& kb = b.intrinsics;
      const Eigen::Vector2d distorted{kb.cx + kb.fx * pc.x() / pc.z(),
                                      kb.cy + kb.fy * pc.y() / pc.z()};
      try {
        const Eigen::Vector2d p = undistort_pixel(distorted, kb, b.distortion);
        flow.du(x, y) = static_cast<float>(p.x() - x);
        flow.dv(x, y) = static_cast<float>(p.y() - y);
      } catch (const InversionFailure&) {
        // outside the invertible range of the next camera: zero flow
      }
    }
  }
  return flow;
}

}  // namespace

SynthBundle render_scene(const SceneSpec& spec, std::uint64_t seed, int threads) {
  spec.validate();
  SynthBundle out;
  out.spec = spec;
  out.seed = seed;
  out.optics = scene_optics(spec, seed);
  const auto poses = scene_poses(spec);
  const Frame base = base_scene(spec, seed);
  const auto intr = CameraIntrinsics::centered(spec.width, spec.height);
  const std::size_t n = static_cast<std::size_t>(spec.frames);

  out.cameras.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    FrameCamera base_cam = FrameCamera::centered(spec.width, spec.height);
    base_cam.pose = poses[t];
    out.cameras[t] = emitted_camera(base_cam, out.optics.frames[t]);
  }

  out.frames.resize(n);
  out.camera_maps.resize(n);
  if (out.optics.flags.bokeh) out.blur_maps.resize(n);
  parallel_for(n, threads, [&](std::size_t t) {
    const OpticalFrame& of = out.optics.frames[t];
    Frame source = base;
    if (of.enabled.bokeh) {
      auto b = bokeh_render(base, {of.alpha, of.focus_u, of.focus_v}, spec.bokeh);
      source = std::move(b.frame);
      out.blur_maps[t] = std::move(b.blur_radius);
    }
    const FrameCamera& cam = out.cameras[t];
    const std::size_t count = static_cast<std::size_t>(spec.width) * spec.height;
    std::vector<float> mx(count), my(count);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * spec.width + x;
        const auto point = plane_point(cam, x, y, spec.plane_depth);
        if (!point) {
          mx[i] = my[i] = 0.0f;
          continue;
        }
        mx[i] = static_cast<float>(intr.fx * point->x() / point->z() + intr.cx);
        my[i] = static_cast<float>(intr.fy * point->y() / point->z() + intr.cy);
      }
    }
    Frame frame;
    frame.pixels = remap_image(source.pixels, mx, my);
    frame.disparity = remap_image(*source.disparity, mx, my);
    out.frames[t] = std::move(frame);
    out.camera_maps[t] = build_camera_map(cam.pose, cam.intrinsics, cam.distortion, cam.aperture,
                                          spec.height, spec.width, spec.sigmoid_prescale);
  });

  out.flows.resize(n - 1);
  parallel_for(n - 1, threads, [&](std::size_t t) {
    out.flows[t] = ground_truth_flow(out.cameras[t], out.cameras[t + 1], spec.plane_depth);
  });

  std::vector<double> stamps(n);
  for (std::size_t t = 0; t < n; ++t) stamps[t] = static_cast<double>(t);
  out.trajectory = from_world_to_camera(stamps, poses);
  return out;
}

double camera_map_distance(const std::vector<CameraMap>& a, const std::vector<CameraMap>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("camera map sequences differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto da = a[i].data();
    const auto db = b[i].data();
    if (da.size() != db.size()) throw DimensionMismatch("camera maps differ in size");
    for (std::size_t j = 0; j < da.size(); ++j) {
      const double d = static_cast<double>(da[j]) - db[j];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

DollyZoomBundle dolly_zoom_bundle(const SceneSpec& spec, std::uint64_t seed, int threads) {
  if (!spec.zoom.present()) throw ConfigError("dolly zoom needs a zoom path");
  if (spec.motion != SceneSpec::Motion::kLine) throw ConfigError("dolly zoom needs line motion");
  DollyZoomBundle out;
  out.bundle = render_scene(spec, seed, threads);

  SceneSpec zoom_only = spec;
  zoom_only.motion = SceneSpec::Motion::kStatic;
  SceneSpec translate_only = spec;
  translate_only.zoom = ParamPath::constant(out.bundle.optics.frames.front().zoom);

  out.l2_vs_pure_zoom =
      camera_map_distance(out.bundle.camera_maps, render_scene(zoom_only, seed, threads).camera_maps);
  out.l2_vs_pure_translation = camera_map_distance(
      out.bundle.camera_maps, render_scene(translate_only, seed, threads).camera_maps);
  return out;
}

std::string frame_name(std::size_t index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05zu%s", index, ext);
  return buf;
}

void write_bundle(const std::filesystem::path& dir, const SynthBundle& b) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const char* sub : {"frames", "disparity", "flow"}) {
    fs::create_directories(dir / sub, ec);
    if (ec) throw IoError("cannot create " + (dir / sub).string() + ": " + ec.message());
  }
  if (!b.blur_maps.empty()) {
    fs::create_directories(dir / "blur", ec);
    if (ec) throw IoError("cannot create " + (dir / "blur").string() + ": " + ec.message());
  }
  for (std::size_t t = 0; t < b.frames.size(); ++t) {
    write_png(dir / "frames" / frame_name(t, ".png"), b.frames[t].pixels);
    write_pfm(dir / "disparity" / frame_name(t, ".pfm"), *b.frames[t].disparity);
  }
  for (std::size_t t = 0; t < b.blur_maps.size(); ++t) {
    write_pfm(dir / "blur" / frame_name(t, ".pfm"), b.blur_maps[t]);
  }
  for (std::size_t t = 0; t < b.flows.size(); ++t) {
    write_flo(dir / "flow" / frame_name(t, ".flo"), b.flows[t]);
  }
  write_tum(dir / "traj.tum", b.trajectory);
  write_camera_maps(dir / "cameramap.akmp", b.camera_maps);
  write_camera_params(dir / "params.jsonl", b.cameras);
  std::string optical;
  for (const auto& f : b.optics.to_json()["frames"]) optical += f.dump() + "\n";
  binary::write_text(dir / "optical.jsonl", optical);
  json spec = b.spec.to_json();
  spec["seed"] = b.seed;
  binary::write_text(dir / "spec.json", spec.dump(2) + "\n");
}

}  // namespace akira
