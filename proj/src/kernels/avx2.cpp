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

// AVX2 variants. This file alone is compiled with -mavx2; the dispatcher only
// routes here after checking the running CPU.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "akira/kernels/kernels.hpp"
#include "akira/kernels/pixel_ops.hpp"

namespace akira::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256 lerp(__m256 a, __m256 b, __m256 t) {
  return _mm256_add_ps(a, _mm256_mul_ps(t, _mm256_sub_ps(b, a)));
}

}  // namespace

void remap_bilinear(const float* src, int w, int h, int channels, const float* map_x,
                    const float* map_y, std::size_t count, float* dst) {
  const __m256 zero = _mm256_setzero_ps();
  const __m256 xmax = _mm256_set1_ps(static_cast<float>(w - 1));
  const __m256 ymax = _mm256_set1_ps(static_cast<float>(h - 1));
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i wm1 = _mm256_set1_epi32(w - 1);
  const __m256i hm1 = _mm256_set1_epi32(h - 1);
  const __m256i width = _mm256_set1_epi32(w);
  const __m256i stride = _mm256_set1_epi32(channels);
  alignas(32) float lane[8];

  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256 x = _mm256_max_ps(_mm256_loadu_ps(map_x + i), zero);
    __m256 y = _mm256_max_ps(_mm256_loadu_ps(map_y + i), zero);
    x = _mm256_min_ps(x, xmax);
    y = _mm256_min_ps(y, ymax);
    const __m256 x0f = _mm256_floor_ps(x);
    const __m256 y0f = _mm256_floor_ps(y);
    const __m256 fx = _mm256_sub_ps(x, x0f);
    const __m256 fy = _mm256_sub_ps(y, y0f);
    const __m256i x0 = _mm256_cvttps_epi32(x0f);
    const __m256i y0 = _mm256_cvttps_epi32(y0f);
    const __m256i x1 = _mm256_min_epi32(_mm256_add_epi32(x0, one), wm1);
    const __m256i y1 = _mm256_min_epi32(_mm256_add_epi32(y0, one), hm1);
    const __m256i row0 = _mm256_mullo_epi32(y0, width);
    const __m256i row1 = _mm256_mullo_epi32(y1, width);
    const __m256i i00 = _mm256_mullo_epi32(_mm256_add_epi32(row0, x0), stride);
    const __m256i i01 = _mm256_mullo_epi32(_mm256_add_epi32(row0, x1), stride);
    const __m256i i10 = _mm256_mullo_epi32(_mm256_add_epi32(row1, x0), stride);
    const __m256i i11 = _mm256_mullo_epi32(_mm256_add_epi32(row1, x1), stride);

    for (int c = 0; c < channels; ++c) {
      const __m256i off = _mm256_set1_epi32(c);
      const __m256 a = _mm256_i32gather_ps(src, _mm256_add_epi32(i00, off), 4);
      const __m256 b = _mm256_i32gather_ps(src, _mm256_add_epi32(i01, off), 4);
      const __m256 cc = _mm256_i32gather_ps(src, _mm256_add_epi32(i10, off), 4);
      const __m256 d = _mm256_i32gather_ps(src, _mm256_add_epi32(i11, off), 4);
      _mm256_store_ps(lane, lerp(lerp(a, b, fx), lerp(cc, d, fx), fy));
      float* out = dst + i * channels + c;
      for (int k = 0; k < 8; ++k) out[k * channels] = lane[k];
    }
  }
  if (i < count) {
    scalar::remap_bilinear(src, w, h, channels, map_x + i, map_y + i, count - i,
                           dst + i * channels);
  }
}

void camera_map_row(const CameraRayParams& p, int row, int width, float* const planes[9]) {
  const double v = static_cast<double>(row);
  const __m256d cx = _mm256_set1_pd(p.cx);
  const __m256d dv = _mm256_set1_pd(v - p.cy);
  const __m256d hd2 = _mm256_set1_pd(p.half_diag_sq);
  const __m256d k1 = _mm256_set1_pd(p.k1);
  const __m256d k2 = _mm256_set1_pd(p.k2);
  const __m256d k3 = _mm256_set1_pd(p.k3);
  const __m256d fx = _mm256_set1_pd(p.fx);
  const __m256d fy = _mm256_set1_pd(p.fy);
  const __m256d unit = _mm256_set1_pd(1.0);
  const __m256d lane_offset = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d rt[9];
  for (int k = 0; k < 9; ++k) rt[k] = _mm256_set1_pd(p.rt[k]);
  const __m256d o0 = _mm256_set1_pd(p.center[0]);
  const __m256d o1 = _mm256_set1_pd(p.center[1]);
  const __m256d o2 = _mm256_set1_pd(p.center[2]);
  const double av = v - p.focus_v;

  int x = 0;
  for (; x + 4 <= width; x += 4) {
    const __m256d u = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(x)), lane_offset);
    const __m256d du = _mm256_sub_pd(u, cx);
    const __m256d r2 = _mm256_div_pd(
        _mm256_add_pd(_mm256_mul_pd(du, du), _mm256_mul_pd(dv, dv)), hd2);
    const __m256d g = _mm256_add_pd(
        unit,
        _mm256_mul_pd(r2, _mm256_add_pd(k1, _mm256_mul_pd(r2, _mm256_add_pd(
                                                                   k2, _mm256_mul_pd(r2, k3))))));
    const __m256d xn = _mm256_div_pd(_mm256_mul_pd(du, g), fx);
    const __m256d yn = _mm256_div_pd(_mm256_mul_pd(dv, g), fy);

    __m256d d0 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(rt[0], xn), _mm256_mul_pd(rt[1], yn)),
                               rt[2]);
    __m256d d1 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(rt[3], xn), _mm256_mul_pd(rt[4], yn)),
                               rt[5]);
    __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(rt[6], xn), _mm256_mul_pd(rt[7], yn)),
                               rt[8]);
    const __m256d n = _mm256_sqrt_pd(_mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(d0, d0), _mm256_mul_pd(d1, d1)), _mm256_mul_pd(d2, d2)));
    d0 = _mm256_div_pd(d0, n);
    d1 = _mm256_div_pd(d1, n);
    d2 = _mm256_div_pd(d2, n);
    const __m256d m0 = _mm256_sub_pd(_mm256_mul_pd(o1, d2), _mm256_mul_pd(o2, d1));
    const __m256d m1 = _mm256_sub_pd(_mm256_mul_pd(o2, d0), _mm256_mul_pd(o0, d2));
    const __m256d m2 = _mm256_sub_pd(_mm256_mul_pd(o0, d1), _mm256_mul_pd(o1, d0));

    _mm_storeu_ps(planes[0] + x, _mm256_cvtpd_ps(d0));
    _mm_storeu_ps(planes[1] + x, _mm256_cvtpd_ps(d1));
    _mm_storeu_ps(planes[2] + x, _mm256_cvtpd_ps(d2));
    _mm_storeu_ps(planes[3] + x, _mm256_cvtpd_ps(m0));
    _mm_storeu_ps(planes[4] + x, _mm256_cvtpd_ps(m1));
    _mm_storeu_ps(planes[5] + x, _mm256_cvtpd_ps(m2));
    for (int k = 0; k < 4; ++k) {
      const double au = static_cast<double>(x + k) - p.focus_u;
      planes[6][x + k] = static_cast<float>(au);
      planes[7][x + k] = static_cast<float>(av);
      planes[8][x + k] = static_cast<float>(ops::aperture_magnitude(au, av, p.aperture_exponent));
    }
  }
  for (; x < width; ++x) {
    const double u = static_cast<double>(x);
    const ops::Ray ray = ops::camera_ray(p, u, v);
    for (int k = 0; k < 3; ++k) {
      planes[k][x] = static_cast<float>(ray.d[k]);
      planes[3 + k][x] = static_cast<float>(ray.m[k]);
    }
    const double au = u - p.focus_u;
    planes[6][x] = static_cast<float>(au);
    planes[7][x] = static_cast<float>(av);
    planes[8][x] = static_cast<float>(ops::aperture_magnitude(au, av, p.aperture_exponent));
  }
}

void disc_blur(const float* src, int w, int h, int channels, const float* radius, int row_begin,
               int row_end, float* dst) {
  if (channels > 4) {
    scalar::disc_blur(src, w, h, channels, radius, row_begin, row_end, dst);
    return;
  }
  const __m256d zero = _mm256_setzero_pd();
  const __m256d unit = _mm256_set1_pd(1.0);
  const __m128i lane = _mm_set_epi32(3, 2, 1, 0);
  const __m128i lane_stride = _mm_mullo_epi32(lane, _mm_set1_epi32(channels));

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
      const __m256d rim = _mm256_set1_pd(r + 0.5);
      __m256d acc[4] = {zero, zero, zero, zero};
      __m256d wsum = zero;
      const int dx_lo = std::max(-reach, -x);
      const int dx_hi = std::min(reach, w - 1 - x);

      for (int dy = -reach; dy <= reach; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        const __m256d dy2 = _mm256_set1_pd(static_cast<double>(dy * dy));
        const float* row = src + static_cast<std::size_t>(yy) * w * channels;
        for (int dx = dx_lo; dx <= dx_hi; dx += 4) {
          const int remaining = dx_hi - dx;  // lanes k <= remaining are real
          const __m256d dxv =
              _mm256_set_pd(dx + 3.0, dx + 2.0, dx + 1.0, static_cast<double>(dx));
          const __m256d dist = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dxv, dxv), dy2));
          __m256d wgt = _mm256_max_pd(_mm256_sub_pd(rim, dist), zero);
          wgt = _mm256_min_pd(wgt, unit);
          const __m256d live = _mm256_castsi256_pd(_mm256_cmpgt_epi64(
              _mm256_set1_epi64x(remaining + 1), _mm256_set_epi64x(3, 2, 1, 0)));
          wgt = _mm256_and_pd(wgt, live);
          wsum = _mm256_add_pd(wsum, wgt);

          // Dead lanes re-read the last real pixel; their weight is zero.
          const int first = x + dx;
          __m128i offs = _mm_add_epi32(_mm_set1_epi32(first * channels), lane_stride);
          if (remaining < 3) {
            offs = _mm_min_epi32(offs, _mm_set1_epi32((x + dx_hi) * channels));
          }
          for (int c = 0; c < channels; ++c) {
            const __m128 v =
                _mm_i32gather_ps(row, _mm_add_epi32(offs, _mm_set1_epi32(c)), 4);
            acc[c] = _mm256_add_pd(acc[c], _mm256_mul_pd(wgt, _mm256_cvtps_pd(v)));
          }
        }
      }
      const double total = hsum(wsum);
      for (int c = 0; c < channels; ++c) out[c] = static_cast<float>(hsum(acc[c]) / total);
    }
  }
}

FlowSimPartial flowsim_accumulate(const float* ref, const float* gen, std::size_t count,
                                  double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const __m256d zero = _mm256_setzero_pd();
  __m256d sum = zero;
  std::uint64_t valid = 0;

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256 r = _mm256_loadu_ps(ref + 2 * i);
    const __m256 g = _mm256_loadu_ps(gen + 2 * i);
    const __m256d rlo = _mm256_cvtps_pd(_mm256_castps256_ps128(r));
    const __m256d rhi = _mm256_cvtps_pd(_mm256_extractf128_ps(r, 1));
    const __m256d glo = _mm256_cvtps_pd(_mm256_castps256_ps128(g));
    const __m256d ghi = _mm256_cvtps_pd(_mm256_extractf128_ps(g, 1));
    // Lanes come out permuted (0,2,1,3) identically for both flows.
    const __m256d ru = _mm256_unpacklo_pd(rlo, rhi);
    const __m256d rv = _mm256_unpackhi_pd(rlo, rhi);
    const __m256d gu = _mm256_unpacklo_pd(glo, ghi);
    const __m256d gv = _mm256_unpackhi_pd(glo, ghi);

    const __m256d mr = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(ru, ru), _mm256_mul_pd(rv, rv)));
    const __m256d mg = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(gu, gu), _mm256_mul_pd(gv, gv)));
    const __m256d in_range = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(mr, t, _CMP_GT_OQ), _mm256_cmp_pd(mg, t, _CMP_GT_OQ)),
        _mm256_and_pd(_mm256_cmp_pd(mr, zero, _CMP_GT_OQ), _mm256_cmp_pd(mg, zero, _CMP_GT_OQ)));
    const __m256d finite =
        _mm256_and_pd(_mm256_cmp_pd(mr, inf, _CMP_LT_OQ), _mm256_cmp_pd(mg, inf, _CMP_LT_OQ));
    const __m256d mask = _mm256_and_pd(in_range, finite);
    const __m256d dot = _mm256_add_pd(_mm256_mul_pd(ru, gu), _mm256_mul_pd(rv, gv));
    // Masked-out lanes may divide by zero; the blend discards them.
    const __m256d cosine = _mm256_div_pd(dot, _mm256_mul_pd(mr, mg));
    sum = _mm256_add_pd(sum, _mm256_blendv_pd(zero, cosine, mask));
    valid += static_cast<std::uint64_t>(__builtin_popcount(_mm256_movemask_pd(mask)));
  }
  FlowSimPartial part = scalar::flowsim_accumulate(ref + 2 * i, gen + 2 * i, count - i, threshold);
  part.cosine_sum += hsum(sum);
  part.valid += valid;
  return part;
}

}  // namespace akira::kernels::avx2
