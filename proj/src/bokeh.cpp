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

#include "akira/augment.hpp"
#include "akira/error.hpp"
#include "akira/kernels/kernels.hpp"

namespace akira {
namespace {

double sample_bilinear(const Image& img, double x, double y) {
  x = std::clamp(x, 0.0, img.width() - 1.0);
  y = std::clamp(y, 0.0, img.height() - 1.0);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = x - x0, fy = y - y0;
  const double top = img.at(x0, y0) + fx * (img.at(x1, y0) - img.at(x0, y0));
  const double bottom = img.at(x0, y1) + fx * (img.at(x1, y1) - img.at(x0, y1));
  return top + fy * (bottom - top);
}

void check_spec(const Image& disparity, const ApertureSpec& spec) {
  if (disparity.channels() != 1) throw ConfigError("disparity must have 1 channel");
  spec.validate(CameraIntrinsics::centered(disparity.width(), disparity.height()));
}

}  // namespace

Image blur_radius_map(const Image& disparity, const ApertureSpec& spec,
                      const BokehParams& params) {
  check_spec(disparity, spec);
  Image radius(disparity.width(), disparity.height(), 1);
  if (spec.alpha == 0.0) return radius;
  const double d_in = sample_bilinear(disparity, spec.focus_u, spec.focus_v);
  const double k = params.gain * spec.alpha;
  auto src = disparity.data();
  auto dst = radius.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<float>(std::min(k * std::abs(src[i] - d_in), params.cap));
  }
  return radius;
}

BokehResult bokeh_render(const Frame& frame, const ApertureSpec& spec,
                         const BokehParams& params) {
  frame.validate();
  if (!frame.disparity) throw ConfigError("bokeh needs a disparity map");
  BokehResult out;
  out.blur_radius = blur_radius_map(*frame.disparity, spec, params);
  out.frame.disparity = frame.disparity;
  if (spec.alpha == 0.0) {
    out.frame.pixels = frame.pixels;
    return out;
  }
  const Image& src = frame.pixels;
  Image dst(src.width(), src.height(), src.channels());
  kernels::active_kernels().disc_blur(src.data().data(), src.width(), src.height(),
                                      src.channels(), out.blur_radius.data().data(), 0,
                                      src.height(), dst.data().data());
  for (float& v : dst.data()) v = std::clamp(v, 0.0f, 1.0f);
  out.frame.pixels = std::move(dst);
  return out;
}

}  // namespace akira
