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

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant chosen at runtime.
// Both variants are equivalence-tested against each other.

#include <cstddef>
#include <cstdint>

namespace akira::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
/// Widest ISA supported by both the build and the running CPU.
Isa best_isa() noexcept;
/// The ISA used by the dispatching wrappers. Defaults to best_isa(), or to
/// AKIRA_KIT_SIMD=scalar|avx2 from the environment when set.
Isa active_isa() noexcept;
/// Throws ConfigError if the ISA is not available.
void set_active_isa(Isa isa);

/// Everything one ray needs, flattened for the kernels. Geometry in 64-bit.
struct CameraRayParams {
  double fx, fy, cx, cy;
  double half_diag_sq;        // squared normalization radius of the distortion model
  double k1, k2, k3;
  double rt[9];               // R transposed, row-major
  double center[3];           // camera centre O = -R^T t
  double focus_u, focus_v;
  double aperture_exponent;   // 1 / sigmoid(alpha)
};

struct FlowSimPartial {
  double cosine_sum = 0.0;
  std::uint64_t valid = 0;
};

/// Bilinear sampling at (map_x[i], map_y[i]) for i < count; coordinates are
/// clamped to [0, w-1] x [0, h-1]. src/dst are channel-interleaved.
using RemapFn = void (*)(const float* src, int w, int h, int channels, const float* map_x,
                         const float* map_y, std::size_t count, float* dst);

/// One row of a 9-plane camera map. planes[c] points at the start of the
/// row inside plane c.
using CameraMapRowFn = void (*)(const CameraRayParams& p, int row, int width,
                                float* const planes[9]);

/// Gather disc blur for rows [row_begin, row_end). Pixels with radius <= 0
/// are copied unchanged.
using DiscBlurFn = void (*)(const float* src, int w, int h, int channels, const float* radius,
                            int row_begin, int row_end, float* dst);

/// Sums of direction cosines over pixels where both interleaved (du, dv)
/// flows have magnitude above threshold (and above zero).
using FlowSimFn = FlowSimPartial (*)(const float* ref, const float* gen, std::size_t count,
                                     double threshold);

struct KernelTable {
  RemapFn remap_bilinear;
  CameraMapRowFn camera_map_row;
  DiscBlurFn disc_blur;
  FlowSimFn flowsim_accumulate;
};

const KernelTable& kernels_for(Isa isa);
inline const KernelTable& active_kernels() { return kernels_for(active_isa()); }

namespace scalar {
void remap_bilinear(const float*, int, int, int, const float*, const float*, std::size_t, float*);
void camera_map_row(const CameraRayParams&, int, int, float* const[9]);
void disc_blur(const float*, int, int, int, const float*, int, int, float*);
FlowSimPartial flowsim_accumulate(const float*, const float*, std::size_t, double);
}  // namespace scalar

namespace avx2 {
void remap_bilinear(const float*, int, int, int, const float*, const float*, std::size_t, float*);
void camera_map_row(const CameraRayParams&, int, int, float* const[9]);
void disc_blur(const float*, int, int, int, const float*, int, int, float*);
FlowSimPartial flowsim_accumulate(const float*, const float*, std::size_t, double);
}  // namespace avx2

}  // namespace akira::kernels
