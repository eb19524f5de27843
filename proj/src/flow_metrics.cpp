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

#include "akira/flow_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "akira/error.hpp"
#include "akira/kernels/kernels.hpp"
#include "akira/parallel.hpp"

namespace akira {
namespace {

// Pairwise (tree) summation: the result depends only on the input order.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

void FlowSimConfig::validate() const {
  if (!(threshold >= 0.0 && std::isfinite(threshold))) {
    throw ConfigError("flow threshold must be finite and >= 0");
  }
}

FlowSimResult flowsim(const FlowField& ref, const FlowField& gen, const FlowSimConfig& cfg) {
  cfg.validate();
  if (ref.width() != gen.width() || ref.height() != gen.height()) {
    std::ostringstream os;
    os << "flow sizes differ: " << ref.width() << "x" << ref.height() << " vs " << gen.width()
       << "x" << gen.height();
    throw DimensionMismatch(os.str());
  }
  const int h = ref.height();
  const std::size_t w = static_cast<std::size_t>(ref.width());
  std::vector<double> row_sums(static_cast<std::size_t>(h), 0.0);
  std::vector<std::uint64_t> row_valid(static_cast<std::size_t>(h), 0);
  const auto fn = kernels::active_kernels().flowsim_accumulate;
  parallel_for(static_cast<std::size_t>(h), cfg.threads, [&](std::size_t y) {
    const auto part = fn(ref.data().data() + 2 * w * y, gen.data().data() + 2 * w * y, w,
                         cfg.threshold);
    row_sums[y] = part.cosine_sum;
    row_valid[y] = part.valid;
  });

  FlowSimResult r;
  for (auto v : row_valid) r.valid += v;
  const std::size_t n = ref.pixel_count();
  r.valid_fraction = n ? static_cast<double>(r.valid) / n : 0.0;
  r.empty = r.valid == 0;
  if (!r.empty) {
    r.score = std::clamp(pairwise_sum(row_sums) / static_cast<double>(r.valid), -1.0, 1.0);
  }
  return r;
}

ClipScore aggregate(std::vector<FlowSimResult> per_frame) {
  ClipScore c;
  double sum = 0.0, frac = 0.0;
  std::size_t used = 0;
  for (const auto& r : per_frame) {
    frac += r.valid_fraction;
    if (r.empty) {
      ++c.empty_frames;
      continue;
    }
    sum += r.score;
    ++used;
  }
  c.empty = used == 0;
  c.score = used ? sum / used : 0.0;
  c.valid_fraction = per_frame.empty() ? 0.0 : frac / per_frame.size();
  c.per_frame = std::move(per_frame);
  return c;
}

FlowField theoretical_zoom_flow(double s, double s_prime, const CameraIntrinsics& intr, int height,
                                int width) {
  if (!std::isfinite(s) || !std::isfinite(s_prime)) throw ConfigError("zoom scales must be finite");
  FlowField f(width, height);
  const double ds = s - s_prime;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      f.du(x, y) = static_cast<float>(ds * (x - intr.cx));
      f.dv(x, y) = static_cast<float>(ds * (y - intr.cy));
    }
  }
  return f;
}

FlowField theoretical_distortion_flow(const Distortion& d, const Distortion& d_prime,
                                      const CameraIntrinsics& intr, int height, int width) {
  if (!d.finite() || !d_prime.finite()) throw ConfigError("distortion coefficients must be finite");
  const double dk1 = d.k1 - d_prime.k1, dk2 = d.k2 - d_prime.k2, dk3 = d.k3 - d_prime.k3;
  const double hd = intr.half_diagonal();
  FlowField f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double du = x - intr.cx, dv = y - intr.cy;
      const double r2 = (du * du + dv * dv) / (hd * hd);
      const double g = r2 * (dk1 + r2 * (dk2 + r2 * dk3));
      f.du(x, y) = static_cast<float>(du * g);
      f.dv(x, y) = static_cast<float>(dv * g);
    }
  }
  return f;
}

FlowSimResult zoomsim(const FlowField& gen, double s, double s_prime, const CameraIntrinsics& intr,
                      const FlowSimConfig& cfg) {
  return flowsim(theoretical_zoom_flow(s, s_prime, intr, gen.height(), gen.width()), gen, cfg);
}

FlowSimResult distortsim(const FlowField& gen, const Distortion& d, const Distortion& d_prime,
                         const CameraIntrinsics& intr, const FlowSimConfig& cfg) {
  return flowsim(theoretical_distortion_flow(d, d_prime, intr, gen.height(), gen.width()), gen,
                 cfg);
}

double focus_area(const Image& blur_radius, double threshold) {
  if (blur_radius.channels() != 1) throw ConfigError("blur map must have 1 channel");
  if (blur_radius.pixel_count() == 0) throw ConfigError("blur map is empty");
  if (!(threshold >= 0.0)) throw ConfigError("focus-area threshold must be >= 0");
  std::size_t sharp = 0;
  for (float b : blur_radius.data()) sharp += b < threshold ? 1 : 0;
  return static_cast<double>(sharp) / static_cast<double>(blur_radius.pixel_count());
}

}  // namespace akira
