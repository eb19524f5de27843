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

#include <algorithm>
#include <cmath>

#include "akira/kernels/kernels.hpp"
#include "akira/kernels/pixel_ops.hpp"

namespace akira::kernels::scalar {

void remap_bilinear(const float* src, int w, int h, int channels, const float* map_x,
                    const float* map_y, std::size_t count, float* dst) {
  const float xmax = static_cast<float>(w - 1);
  const float ymax = static_cast<float>(h - 1);
  for (std::size_t i = 0; i < count; ++i) {
    float x = map_x[i];
    float y = map_y[i];
    // NaN-safe clamp, matching _mm256_max_ps / _mm256_min_ps operand order.
    x = x > 0.0f ? x : 0.0f;
    y = y > 0.0f ? y : 0.0f;
    x = x < xmax ? x : xmax;
    y = y < ymax ? y : ymax;

    const float x0f = std::floor(x);
    const float y0f = std::floor(y);
    const float fx = x - x0f;
    const float fy = y - y0f;
    const int x0 = static_cast<int>(x0f);
    const int y0 = static_cast<int>(y0f);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);

    const float* p00 = src + (static_cast<std::size_t>(y0) * w + x0) * channels;
    const float* p01 = src + (static_cast<std::size_t>(y0) * w + x1) * channels;
    const float* p10 = src + (static_cast<std::size_t>(y1) * w + x0) * channels;
    const float* p11 = src + (static_cast<std::size_t>(y1) * w + x1) * channels;
    float* out = dst + i * channels;
    for (int c = 0; c < channels; ++c) {
      const float top = ops::lerp(p00[c], p01[c], fx);
      const float bottom = ops::lerp(p10[c], p11[c], fx);
      out[c] = ops::lerp(top, bottom, fy);
    }
  }
}

void camera_map_row(const CameraRayParams& p, int row, int width, float* const planes[9]) {
  const double v = static_cast<double>(row);
  const double av = v - p.focus_v;
  for (int x = 0; x < width; ++x) {
    const double u = static_cast<double>(x);
    const ops::Ray ray = ops::camera_ray(p, u, v);
    planes[0][x] = static_cast<float>(ray.d[0]);
    planes[1][x] = static_cast<float>(ray.d[1]);
    planes[2][x] = static_cast<float>(ray.d[2]);
    planes[3][x] = static_cast<float>(ray.m[0]);
    planes[4][x] = static_cast<float>(ray.m[1]);
    planes[5][x] = static_cast<float>(ray.m[2]);
    const double au = u - p.focus_u;
    planes[6][x] = static_cast<float>(au);
    planes[7][x] = static_cast<float>(av);
    planes[8][x] = static_cast<float>(ops::aperture_magnitude(au, av, p.aperture_exponent));
  }
}

void disc_blur(const float* src, int w, int h, int channels, const float* radius, int row_begin,
               int row_end, float* dst) {
  double acc[8];
  for (int y = row_begin; y < row_end; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      const float* center = src + idx * channels;
      float* out = dst + idx * channels;
      const double r = radius[idx];
      if (!(r > 0.0)) {
        std::copy(center, center + channels, out);
        continue;
      }
      const int reach = static_cast<int>(std::floor(r + 0.5));
      std::fill(acc, acc + channels, 0.0);
      double wsum = 0.0;
      for (int dy = -reach; dy <= reach; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        const int dx_lo = std::max(-reach, -x);
        const int dx_hi = std::min(reach, w - 1 - x);
        const float* row = src + (static_cast<std::size_t>(yy) * w) * channels;
        for (int dx = dx_lo; dx <= dx_hi; ++dx) {
          const double dist = std::sqrt(static_cast<double>(dx * dx + dy * dy));
          double wgt = r + 0.5 - dist;
          wgt = wgt > 0.0 ? wgt : 0.0;
          wgt = wgt < 1.0 ? wgt : 1.0;
          const float* q = row + static_cast<std::size_t>(x + dx) * channels;
          for (int c = 0; c < channels; ++c) acc[c] += wgt * q[c];
          wsum += wgt;
        }
      }
      for (int c = 0; c < channels; ++c) out[c] = static_cast<float>(acc[c] / wsum);
    }
  }
}

FlowSimPartial flowsim_accumulate(const float* ref, const float* gen, std::size_t count,
                                  double threshold) {
  FlowSimPartial part;
  for (std::size_t i = 0; i < count; ++i) {
    const double ru = ref[2 * i], rv = ref[2 * i + 1];
    const double gu = gen[2 * i], gv = gen[2 * i + 1];
    const double mr = std::sqrt(ru * ru + rv * rv);
    const double mg = std::sqrt(gu * gu + gv * gv);
    // NaN (no correspondence) and infinite vectors never count.
    if (mr > threshold && mg > threshold && mr > 0.0 && mg > 0.0 && std::isfinite(mr) && std::isfinite(mg)) {
      part.cosine_sum += (ru * gu + rv * gv) / (mr * mg);
      ++part.valid;
    }
  }
  return part;
}

}  // namespace akira::kernels::scalar
