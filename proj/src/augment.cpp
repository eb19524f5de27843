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

#include "akira/augment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "akira/error.hpp"
#include "akira/kernels/kernels.hpp"
#include "akira/log.hpp"
#include "akira/parallel.hpp"
#include "akira/rng.hpp"
#include "akira/spline.hpp"

namespace akira {

using nlohmann::json;

void Frame::validate() const {
  if (pixels.empty()) throw ConfigError("frame has no pixels");
  if (pixels.channels() != 3) throw ConfigError("frame pixels must have 3 channels");
  if (disparity) {
    if (disparity->channels() != 1) throw ConfigError("disparity must have 1 channel");
    if (disparity->width() != pixels.width() || disparity->height() != pixels.height()) {
      std::ostringstream os;
      os << "disparity " << disparity->width() << "x" << disparity->height()
         << " does not match frame " << pixels.width() << "x" << pixels.height();
      throw DimensionMismatch(os.str());
    }
  }
}

// --- WarpField ------------------------------------------------------------------

WarpField::WarpField(int w, int h)
    : width(w),
      height(h),
      src_x(static_cast<std::size_t>(w) * h, 0.0f),
      src_y(static_cast<std::size_t>(w) * h, 0.0f) {}

WarpField WarpField::identity(int w, int h) {
  WarpField f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      f.src_x[i] = static_cast<float>(x);
      f.src_y[i] = static_cast<float>(y);
    }
  }
  return f;
}

bool WarpField::all_in_bounds(int src_w, int src_h) const {
  const float xmax = static_cast<float>(src_w - 1);
  const float ymax = static_cast<float>(src_h - 1);
  for (std::size_t i = 0; i < src_x.size(); ++i) {
    if (!(src_x[i] >= 0.0f && src_x[i] <= xmax && src_y[i] >= 0.0f && src_y[i] <= ymax)) {
      return false;
    }
  }
  return true;
}

// --- Sampling -----------------------------------------------------------------

std::vector<double> spline_through_controls(std::span<const double> controls, int frames,
                                            double lo, double hi) {
  if (frames < 1) throw ConfigError("trajectory needs at least one frame");
  if (controls.size() < 2) throw ConfigError("spline needs at least two control points");
  if (!(lo <= hi)) throw ConfigError("spline range is empty");
  std::vector<double> out(static_cast<std::size_t>(frames));
  if (frames == 1) {
    out[0] = std::clamp(controls[0], lo, hi);
    return out;
  }
  const double span = frames - 1;
  const std::size_t k = controls.size();
  std::vector<double> knots(k);
  for (std::size_t j = 0; j < k; ++j) knots[j] = span * static_cast<double>(j) / (k - 1);
  const NaturalCubicSpline spline(std::move(knots), {controls.begin(), controls.end()});
  for (int i = 0; i < frames; ++i) out[i] = std::clamp(spline(i), lo, hi);
  return out;
}

std::vector<double> sample_spline_trajectory(std::uint64_t seed, int frames, double lo, double hi,
                                             int control_points) {
  if (control_points < 2) throw ConfigError("spline needs at least two control points");
  Rng rng(seed);
  std::vector<double> controls(static_cast<std::size_t>(control_points));
  for (double& c : controls) c = rng.uniform(lo, hi);
  return spline_through_controls(controls, frames, lo, hi);
}

EffectFlags apply_dropout(std::uint64_t seed, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("dropout probability must be in [0, 1]");
  Rng rng(seed);
  EffectFlags flags;
  if (!rng.bernoulli(p)) return flags;
  flags.bokeh = rng.bernoulli(p);
  flags.distortion = rng.bernoulli(p);
  flags.zoom = rng.bernoulli(p);
  return flags;
}

// --- Warps --------------------------------------------------------------------------

namespace {

void check_frame_matches(const Frame& frame, const CameraIntrinsics& intr) {
  frame.validate();
  intr.validate();
  if (frame.width() != intr.width || frame.height() != intr.height) {
    std::ostringstream os;
    os << "frame " << frame.width() << "x" << frame.height() << " does not match intrinsics "
       << intr.width << "x" << intr.height;
    throw DimensionMismatch(os.str());
  }
}

Image remap(const Image& src, const WarpField& warp) {
  Image dst(warp.width, warp.height, src.channels());
  kernels::active_kernels().remap_bilinear(src.data().data(), src.width(), src.height(),
                                           src.channels(), warp.src_x.data(), warp.src_y.data(),
                                           warp.src_x.size(), dst.data().data());
  return dst;
}

}  // namespace

Frame apply_warp(const Frame& frame, const WarpField& warp) {
  frame.validate();
  Frame out;
  out.pixels = remap(frame.pixels, warp);
  if (frame.disparity) out.disparity = remap(*frame.disparity, warp);
  return out;
}

WarpField zoom_warp_field(double s, const CameraIntrinsics& intr) {
  return distortion_warp_field(Distortion{}, intr, s);
}

ZoomResult zoom_warp(const Frame& frame, double s, const CameraIntrinsics& intr) {
  if (!(s >= 1.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << "zoom factor " << s << " must be >= 1";
    throw OutOfRange(os.str());
  }
  check_frame_matches(frame, intr);
  ZoomResult r;
  r.frame = apply_warp(frame, zoom_warp_field(s, intr));
  r.intrinsics = intr;
  r.intrinsics.fx *= s;
  r.intrinsics.fy *= s;
  return r;
}

WarpField distortion_warp_field(const Distortion& dist, const CameraIntrinsics& intr,
                                double zoom) {
  if (!(zoom > 0.0) || !std::isfinite(zoom)) throw OutOfRange("warp zoom must be positive");
  WarpField f(intr.width, intr.height);
  for (int y = 0; y < intr.height; ++y) {
    for (int x = 0; x < intr.width; ++x) {
      const Eigen::Vector2d q{(x - intr.cx) / zoom + intr.cx, (y - intr.cy) / zoom + intr.cy};
      const Eigen::Vector2d src = distort_pixel(q, intr, dist);
      const std::size_t i = static_cast<std::size_t>(y) * intr.width + x;
      f.src_x[i] = static_cast<float>(src.x());
      f.src_y[i] = static_cast<float>(src.y());
    }
  }
  return f;
}

double distortion_crop_factor(const Distortion& dist, const CameraIntrinsics& intr) {
  intr.validate();
  if (!dist.finite()) throw ConfigError("distortion coefficients must be finite");
  if (dist.is_zero()) return 1.0;
  if (!dist.monotone_up_to(max_corner_radius(intr))) {
    std::ostringstream os;
    os << "distortion (" << dist.k1 << ", " << dist.k2 << ", " << dist.k3
       << ") folds back inside the frame";
    throw UnsupportedDistortion(os.str());
  }

  // Border of the output frame at quarter-pixel spacing, corners included.
  // The radial map is monotone, so the image of the (star-shaped) frame is
  // bounded by the image of its border.
  const double xmax = intr.width - 1.0;
  const double ymax = intr.height - 1.0;
  std::vector<Eigen::Vector2d> border;
  const int nx = 4 * (intr.width - 1);
  const int ny = 4 * (intr.height - 1);
  for (int i = 0; i <= nx; ++i) {
    const double x = i == nx ? xmax : 0.25 * i;
    border.emplace_back(x, 0.0);
    border.emplace_back(x, ymax);
  }
  for (int j = 1; j < ny; ++j) {
    const double y = 0.25 * j;
    border.emplace_back(0.0, y);
    border.emplace_back(xmax, y);
  }

  auto inside = [&](double s) {
    for (const auto& p : border) {
      const Eigen::Vector2d q{(p.x() - intr.cx) / s + intr.cx, (p.y() - intr.cy) / s + intr.cy};
      const Eigen::Vector2d src = distort_pixel(q, intr, dist);
      if (!(src.x() >= 0.0 && src.x() <= xmax && src.y() >= 0.0 && src.y() <= ymax)) {
        return false;
      }
    }
    return true;
  };

  if (inside(1.0)) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (!inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw UnsupportedDistortion("no finite crop keeps the frame in bounds");
  }
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

DistortionResult distortion_warp(const Frame& frame, const Distortion& dist,
                                 const CameraIntrinsics& intr) {
  check_frame_matches(frame, intr);
  DistortionResult r;
  r.zoom = distortion_crop_factor(dist, intr);
  r.warp = distortion_warp_field(dist, intr, r.zoom);
  r.frame = apply_warp(frame, r.warp);
  return r;
}

// --- Config ---------------------------------------------------------------------

void AugmentConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must be in [0, 1]");
  if (knots < 2) throw ConfigError("knots must be >= 2");
  auto check = [](const ParamRange& r, const char* name) {
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi)) {
      throw ConfigError(std::string("range '") + name + "' must be finite with lo <= hi");
    }
  };
  check(aperture, "aperture");
  check(distortion, "distortion");
  check(zoom, "zoom");
  if (aperture.lo < 0.0) throw ConfigError("aperture range must be non-negative");
  if (zoom.lo < 1.0) throw ConfigError("zoom range must be >= 1");
  if (!(focus_margin >= 0.0 && focus_margin < 0.5)) {
    throw ConfigError("focus_margin must be in [0, 0.5)");
  }
  if (!(bokeh.gain >= 0.0 && std::isfinite(bokeh.gain))) throw ConfigError("bokeh_gain must be >= 0");
  if (!(bokeh.cap >= 0.0 && bokeh.cap <= 256.0)) throw ConfigError("bokeh_cap must be in [0, 256]");
  if (!(sigmoid_prescale > 0.0 && std::isfinite(sigmoid_prescale))) {
    throw ConfigError("sigmoid_prescale must be positive");
  }
  if (distortion.lo < -0.1 || distortion.hi > 0.1) {
    log::warn("distortion range extends outside [-0.1, 0.1]");
  }
}

namespace {

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

ParamRange get_range(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("config key '" + key + "' must be [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
  return j.get<bool>();
}

}  // namespace

AugmentConfig AugmentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("augment config must be a JSON object");
  AugmentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      continue;  // consumed by the caller
    } else if (key == "p") {
      c.p = get_number(value, key);
    } else if (key == "knots") {
      if (!value.is_number_integer()) throw ConfigError("config key 'knots' must be an integer");
      c.knots = value.get<int>();
    } else if (key == "focus_margin") {
      c.focus_margin = get_number(value, key);
    } else if (key == "bokeh_gain") {
      c.bokeh.gain = get_number(value, key);
    } else if (key == "bokeh_cap") {
      c.bokeh.cap = get_number(value, key);
    } else if (key == "sigmoid_prescale") {
      c.sigmoid_prescale = get_number(value, key);
    } else if (key == "ranges") {
      if (!value.is_object()) throw ConfigError("config key 'ranges' must be an object");
      for (const auto& [name, r] : value.items()) {
        if (name == "aperture") {
          c.aperture = get_range(r, "ranges.aperture");
        } else if (name == "distortion") {
          c.distortion = get_range(r, "ranges.distortion");
        } else if (name == "zoom") {
          c.zoom = get_range(r, "ranges.zoom");
        } else {
          throw ConfigError("unknown config key 'ranges." + name + "'");
        }
      }
    } else if (key == "effects") {
      if (!value.is_object()) throw ConfigError("config key 'effects' must be an object");
      for (const auto& [name, b] : value.items()) {
        if (name == "bokeh") {
          c.allowed.bokeh = get_bool(b, "effects.bokeh");
        } else if (name == "distortion") {
          c.allowed.distortion = get_bool(b, "effects.distortion");
        } else if (name == "zoom") {
          c.allowed.zoom = get_bool(b, "effects.zoom");
        } else {
          throw ConfigError("unknown config key 'effects." + name + "'");
        }
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

json AugmentConfig::to_json() const {
  return {{"p", p},
          {"knots", knots},
          {"focus_margin", focus_margin},
          {"bokeh_gain", bokeh.gain},
          {"bokeh_cap", bokeh.cap},
          {"sigmoid_prescale", sigmoid_prescale},
          {"ranges",
           {{"aperture", {aperture.lo, aperture.hi}},
            {"distortion", {distortion.lo, distortion.hi}},
            {"zoom", {zoom.lo, zoom.hi}}}},
          {"effects",
           {{"bokeh", allowed.bokeh}, {"distortion", allowed.distortion}, {"zoom", allowed.zoom}}}};
}

// --- Trajectories ---------------------------------------------------------------

namespace {

json flags_json(const EffectFlags& f) {
  return {{"bokeh", f.bokeh}, {"distortion", f.distortion}, {"zoom", f.zoom}};
}

// Per-frame coefficient paths whose radial map stays monotone over the whole
// frame. Draws are repeated on fresh substreams; if that keeps failing the
// last draw is shrunk towards zero, which is always admissible.
std::vector<Distortion> sample_distortion_path(std::uint64_t seed, int frames,
                                               const CameraIntrinsics& intr,
                                               const AugmentConfig& cfg) {
  const double r_max = max_corner_radius(intr);
  std::vector<Distortion> path(static_cast<std::size_t>(frames));
  auto draw = [&](int attempt, double shrink) {
    const auto k1 = sample_spline_trajectory(derive_seed(seed, "k1", attempt), frames,
                                             cfg.distortion.lo, cfg.distortion.hi, cfg.knots);
    const auto k2 = sample_spline_trajectory(derive_seed(seed, "k2", attempt), frames,
                                             cfg.distortion.lo, cfg.distortion.hi, cfg.knots);
    const auto k3 = sample_spline_trajectory(derive_seed(seed, "k3", attempt), frames,
                                             cfg.distortion.lo, cfg.distortion.hi, cfg.knots);
    bool ok = true;
    for (int t = 0; t < frames; ++t) {
      path[t] = {shrink * k1[t], shrink * k2[t], shrink * k3[t]};
      ok = ok && path[t].monotone_up_to(r_max);
    }
    return ok;
  };
  constexpr int kAttempts = 32;
  for (int a = 0; a < kAttempts; ++a) {
    if (draw(a, 1.0)) return path;
  }
  for (double shrink = 0.5; shrink > 1e-6; shrink *= 0.5) {
    if (draw(kAttempts - 1, shrink)) return path;
  }
  std::fill(path.begin(), path.end(), Distortion{});
  return path;
}

}  // namespace

Eigen::Vector2d OpticalFrame::source_position(const Eigen::Vector2d& p,
                                              const CameraIntrinsics& intr) const {
  const Eigen::Vector2d q{(p.x() - intr.cx) / effective_zoom + intr.cx,
                          (p.y() - intr.cy) / effective_zoom + intr.cy};
  return enabled.distortion ? distort_pixel(q, intr, distortion) : q;
}

json OpticalTrajectory::to_json() const {
  json out;
  out["flags"] = flags_json(flags);
  json list = json::array();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& f = frames[t];
    list.push_back({{"frame", t},
                    {"enabled", flags_json(f.enabled)},
                    {"zoom", f.zoom},
                    {"crop", f.crop},
                    {"effective_zoom", f.effective_zoom},
                    {"k1", f.distortion.k1},
                    {"k2", f.distortion.k2},
                    {"k3", f.distortion.k3},
                    {"alpha", f.alpha},
                    {"focus_u", f.focus_u},
                    {"focus_v", f.focus_v}});
  }
  out["frames"] = std::move(list);
  return out;
}

OpticalTrajectory sample_optical_trajectory(std::uint64_t seed, int frames,
                                            const CameraIntrinsics& intr,
                                            const AugmentConfig& cfg) {
  cfg.validate();
  intr.validate();
  if (frames < 1) throw ConfigError("clip must contain at least one frame");

  OpticalTrajectory traj;
  EffectFlags f = apply_dropout(derive_seed(seed, "dropout"), cfg.p);
  f.bokeh = f.bokeh && cfg.allowed.bokeh;
  f.distortion = f.distortion && cfg.allowed.distortion;
  f.zoom = f.zoom && cfg.allowed.zoom;
  traj.flags = f;
  traj.frames.assign(static_cast<std::size_t>(frames), OpticalFrame{});
  for (auto& of : traj.frames) {
    of.enabled = f;
    of.focus_u = intr.cx;
    of.focus_v = intr.cy;
  }

  if (f.zoom) {
    const auto z = sample_spline_trajectory(derive_seed(seed, "zoom"), frames, cfg.zoom.lo,
                                            cfg.zoom.hi, cfg.knots);
    for (int t = 0; t < frames; ++t) traj.frames[t].zoom = z[t];
  }
  if (f.distortion) {
    const auto path = sample_distortion_path(seed, frames, intr, cfg);
    for (int t = 0; t < frames; ++t) {
      traj.frames[t].distortion = path[t];
      traj.frames[t].crop = distortion_crop_factor(path[t], intr);
    }
  }
  if (f.bokeh) {
    const double m = cfg.focus_margin;
    const double umax = intr.width - 1.0, vmax = intr.height - 1.0;
    const auto a = sample_spline_trajectory(derive_seed(seed, "aperture"), frames,
                                            cfg.aperture.lo, cfg.aperture.hi, cfg.knots);
    const auto fu = sample_spline_trajectory(derive_seed(seed, "focus_u"), frames, m * umax,
                                             (1.0 - m) * umax, cfg.knots);
    const auto fv = sample_spline_trajectory(derive_seed(seed, "focus_v"), frames, m * vmax,
                                             (1.0 - m) * vmax, cfg.knots);
    for (int t = 0; t < frames; ++t) {
      traj.frames[t].alpha = a[t];
      traj.frames[t].focus_u = fu[t];
      traj.frames[t].focus_v = fv[t];
    }
  }
  for (auto& of : traj.frames) of.effective_zoom = of.zoom * of.crop;
  return traj;
}

FrameCamera emitted_camera(const FrameCamera& base, const OpticalFrame& params) {
  FrameCamera cam = base;
  const auto& e = params.enabled;
  const double s = params.effective_zoom;
  if (e.distortion && !base.distortion.is_zero()) {
    throw ConfigError("distortion augmentation needs an undistorted input camera");
  }
  if (e.bokeh) {
    cam.aperture.alpha = params.alpha;
    cam.aperture.focus_u = params.focus_u;
    cam.aperture.focus_v = params.focus_v;
  }
  if (!(e.distortion || e.zoom)) return cam;

  const Distortion src_dist = e.distortion ? params.distortion : base.distortion;
  cam.intrinsics.fx *= s;
  cam.intrinsics.fy *= s;
  cam.distortion = src_dist.rescaled(s);

  // The focus point follows the image content through the warp.
  const auto& k = base.intrinsics;
  Eigen::Vector2d f{cam.aperture.focus_u, cam.aperture.focus_v};
  try {
    const Eigen::Vector2d q = e.distortion ? undistort_pixel(f, k, params.distortion) : f;
    f = {s * (q.x() - k.cx) + k.cx, s * (q.y() - k.cy) + k.cy};
  } catch (const InversionFailure&) {
    // leave f where it was; clamped below
  }
  cam.aperture.focus_u = std::clamp(f.x(), 0.0, k.width - 1.0);
  cam.aperture.focus_v = std::clamp(f.y(), 0.0, k.height - 1.0);
  return cam;
}

AugmentResult apply_optical_trajectory(std::span<const Frame> frames, const FrameCamera& base,
                                       const OpticalTrajectory& trajectory,
                                       const AugmentConfig& cfg, int threads) {
  if (frames.empty()) throw ConfigError("clip must contain at least one frame");
  if (trajectory.frames.size() != frames.size()) {
    throw DimensionMismatch("trajectory length does not match the clip");
  }
  base.validate();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    check_frame_matches(frames[t], base.intrinsics);
    if (trajectory.frames[t].enabled.bokeh && !frames[t].disparity) {
      throw ConfigError("bokeh is enabled but frame " + std::to_string(t) + " has no disparity");
    }
  }

  const std::size_t n = frames.size();
  AugmentResult out;
  out.trajectory = trajectory;
  out.frames.resize(n);
  out.cameras.resize(n);
  if (trajectory.flags.bokeh) out.blur_maps.resize(n);
  const bool geometric = trajectory.flags.distortion || trajectory.flags.zoom;
  if (geometric) out.warps.resize(n);

  parallel_for(n, threads, [&](std::size_t t) {
    const OpticalFrame& params = trajectory.frames[t];
    Frame current = frames[t];
    if (params.enabled.bokeh) {
      const ApertureSpec spec{params.alpha, params.focus_u, params.focus_v};
      BokehResult b = bokeh_render(current, spec, cfg.bokeh);
      current = std::move(b.frame);
      out.blur_maps[t] = std::move(b.blur_radius);
    }
    if (params.enabled.distortion || params.enabled.zoom) {
      const Distortion d = params.enabled.distortion ? params.distortion : Distortion{};
      WarpField warp = distortion_warp_field(d, base.intrinsics, params.effective_zoom);
      current = apply_warp(current, warp);
      out.warps[t] = std::move(warp);
    }
    out.frames[t] = std::move(current);
    out.cameras[t] = emitted_camera(base, params);
  });
  return out;
}

AugmentResult augment_clip(std::span<const Frame> frames, const FrameCamera& base,
                           std::uint64_t seed, const AugmentConfig& cfg, int threads) {
  if (frames.empty()) throw ConfigError("clip must contain at least one frame");
  const auto traj = sample_optical_trajectory(seed, static_cast<int>(frames.size()),
                                              base.intrinsics, cfg);
  return apply_optical_trajectory(frames, base, traj, cfg, threads);
}

}  // namespace akira
