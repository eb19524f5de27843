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

#include "akira/flow.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "akira/error.hpp"
#include "binary_io.hpp"

namespace akira {

namespace {
constexpr float kFloMagic = 202021.25f;
}

bool FlowField::all_finite() const noexcept {
  for (float v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

FlowField FlowField::scaled(float factor) const {
  FlowField out = *this;
  for (float& v : out.data_) v *= factor;
  return out;
}

FlowField read_flo(const std::filesystem::path& path) {
  const auto bytes = binary::read_file(path);
  if (bytes.size() < 12) {
    throw ParseError(path.string() + ": truncated .flo header at offset " +
                     std::to_string(bytes.size()));
  }
  const float magic = binary::get_f32(bytes.data());
  if (magic != kFloMagic) {
    std::ostringstream os;
    os << path.string() << ": bad .flo magic at offset 0 (expected 202021.25, found " << magic
       << ")";
    throw ParseError(os.str());
  }
  const std::int32_t w = binary::get_i32(bytes.data() + 4);
  const std::int32_t h = binary::get_i32(bytes.data() + 8);
  if (w <= 0 || h <= 0 || w > (1 << 16) || h > (1 << 16)) {
    throw ParseError(path.string() + ": implausible .flo size at offset 4");
  }
  const std::size_t expected = 12 + static_cast<std::size_t>(w) * h * 8;
  if (bytes.size() != expected) {
    throw ParseError(path.string() + ": .flo payload size mismatch at offset " +
                     std::to_string(std::min(bytes.size(), expected)));
  }
  FlowField flow(w, h);
  const unsigned char* p = bytes.data() + 12;
  for (float& v : flow.data()) {
    v = binary::get_f32(p);
    p += 4;
  }
  return flow;
}

void write_flo(const std::filesystem::path& path, const FlowField& flow) {
  std::vector<unsigned char> bytes;
  bytes.reserve(12 + flow.data().size() * 4);
  binary::put_f32(bytes, kFloMagic);
  binary::put_i32(bytes, flow.width());
  binary::put_i32(bytes, flow.height());
  for (float v : flow.data()) binary::put_f32(bytes, v);
  binary::write_file(path, bytes);
}

FlowField flow_from_warp(const WarpField& warp, int src_width, int src_height) {
  if (src_width <= 0 || src_height <= 0) throw ConfigError("flow_from_warp: empty source frame");
  const std::size_t n = static_cast<std::size_t>(src_width) * src_height;
  std::vector<double> su(n, 0.0), sv(n, 0.0);
  std::vector<std::uint32_t> votes(n, 0);
  for (int y = 0; y < warp.height; ++y) {
    for (int x = 0; x < warp.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * warp.width + x;
      const double qx = warp.src_x[i];
      const double qy = warp.src_y[i];
      if (!std::isfinite(qx) || !std::isfinite(qy)) continue;
      const long rx = std::lround(qx);
      const long ry = std::lround(qy);
      if (rx < 0 || ry < 0 || rx >= src_width || ry >= src_height) continue;
      const std::size_t j = static_cast<std::size_t>(ry) * src_width + rx;
      su[j] += x - qx;
      sv[j] += y - qy;
      ++votes[j];
    }
  }

  FlowField flow(src_width, src_height);
  const float nan = std::numeric_limits<float>::quiet_NaN();
  for (std::size_t j = 0; j < n; ++j) {
    flow.data()[2 * j] = votes[j] ? static_cast<float>(su[j] / votes[j]) : nan;
    flow.data()[2 * j + 1] = votes[j] ? static_cast<float>(sv[j] / votes[j]) : nan;
  }
  return flow;
}

WarpField relative_warp(const OpticalFrame& a, const OpticalFrame& b,
                        const CameraIntrinsics& intr) {
  WarpField out(intr.width, intr.height);
  const double sa = a.effective_zoom;
  for (int y = 0; y < intr.height; ++y) {
    for (int x = 0; x < intr.width; ++x) {
      const Eigen::Vector2d q = b.source_position({x, y}, intr);
      Eigen::Vector2d u = q;
      const std::size_t i = static_cast<std::size_t>(y) * intr.width + x;
      try {
        if (a.enabled.distortion) u = undistort_pixel(q, intr, a.distortion);
      } catch (const InversionFailure&) {
        out.src_x[i] = out.src_y[i] = std::numeric_limits<float>::quiet_NaN();
        continue;
      }
      out.src_x[i] = static_cast<float>(sa * (u.x() - intr.cx) + intr.cx);
      out.src_y[i] = static_cast<float>(sa * (u.y() - intr.cy) + intr.cy);
    }
  }
  return out;
}

}  // namespace akira
