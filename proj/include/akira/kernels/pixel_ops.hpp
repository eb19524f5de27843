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

// Per-pixel scalar formulas shared by the public API and the scalar kernels.
// Internal linkage on purpose: the AVX2 translation unit includes this header
// too, and its copies must never be picked for scalar callers.

#include <cmath>

#include "akira/kernels/kernels.hpp"

namespace akira::kernels::ops {

struct Ray {
  double d[3];
  double m[3];
};

/// Radial factor 1 + k1 r^2 + k2 r^4 + k3 r^6 with r^2 normalized.
static inline double radial_factor(double r2, double k1, double k2, double k3) {
  return 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
}

static inline Ray camera_ray(const CameraRayParams& p, double u, double v) {
  const double du = u - p.cx;
  const double dv = v - p.cy;
  const double r2 = (du * du + dv * dv) / p.half_diag_sq;
  const double g = radial_factor(r2, p.k1, p.k2, p.k3);
  const double x = (du * g) / p.fx;
  const double y = (dv * g) / p.fy;

  double dx = p.rt[0] * x + p.rt[1] * y + p.rt[2];
  double dy = p.rt[3] * x + p.rt[4] * y + p.rt[5];
  double dz = p.rt[6] * x + p.rt[7] * y + p.rt[8];
  const double n = std::sqrt(dx * dx + dy * dy + dz * dz);
  dx = dx / n;
  dy = dy / n;
  dz = dz / n;

  const double* o = p.center;
  return Ray{{dx, dy, dz},
             {o[1] * dz - o[2] * dy, o[2] * dx - o[0] * dz, o[0] * dy - o[1] * dx}};
}

static inline double aperture_magnitude(double du, double dv, double exponent) {
  const double rho = std::sqrt(du * du + dv * dv);
  return rho == 0.0 ? 0.0 : std::pow(rho, exponent);
}

static inline float lerp(float a, float b, float t) { return a + t * (b - a); }

}  // namespace akira::kernels::ops
