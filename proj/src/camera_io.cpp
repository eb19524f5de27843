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

#include "akira/camera_io.hpp"

#include <json.hpp>
#include <cstring>
#include <sstream>

#include "binary_io.hpp"

namespace akira {

using nlohmann::json;

FrameCamera FrameCamera::centered(int width, int height) {
  FrameCamera cam;
  cam.intrinsics = CameraIntrinsics::centered(width, height);
  cam.aperture.focus_u = cam.intrinsics.cx;
  cam.aperture.focus_v = cam.intrinsics.cy;
  return cam;
}

void FrameCamera::validate() const {
  intrinsics.validate();
  distortion.validate();
  aperture.validate(intrinsics);
  pose.validate();
}

json to_json(const FrameCamera& c) {
  json j;
  j["fx"] = c.intrinsics.fx;
  j["fy"] = c.intrinsics.fy;
  j["cx"] = c.intrinsics.cx;
  j["cy"] = c.intrinsics.cy;
  j["width"] = c.intrinsics.width;
  j["height"] = c.intrinsics.height;
  j["k1"] = c.distortion.k1;
  j["k2"] = c.distortion.k2;
  j["k3"] = c.distortion.k3;
  j["alpha"] = c.aperture.alpha;
  j["focus_u"] = c.aperture.focus_u;
  j["focus_v"] = c.aperture.focus_v;
  json r = json::array();
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) r.push_back(c.pose.rotation(row, col));
  }
  j["R"] = std::move(r);
  j["t"] = {c.pose.translation.x(), c.pose.translation.y(), c.pose.translation.z()};
  return j;
}

namespace {

double number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("camera record: missing key '") + key + "'");
  if (!it->is_number()) throw ParseError(std::string("camera record: '") + key + "' is not a number");
  return it->get<double>();
}

int integer(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw ParseError(std::string("camera record: '") + key + "' must be an integer");
  }
  return it->get<int>();
}

std::vector<double> numbers(const json& j, const char* key, std::size_t n) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_array() || it->size() != n) {
    throw ParseError(std::string("camera record: '") + key + "' must be an array of " +
                     std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) throw ParseError(std::string("camera record: '") + key + "' has a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

FrameCamera camera_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("camera record must be a JSON object");
  FrameCamera c;
  c.intrinsics.fx = number(j, "fx");
  c.intrinsics.fy = number(j, "fy");
  c.intrinsics.cx = number(j, "cx");
  c.intrinsics.cy = number(j, "cy");
  c.intrinsics.width = integer(j, "width");
  c.intrinsics.height = integer(j, "height");
  c.distortion = {number(j, "k1"), number(j, "k2"), number(j, "k3")};
  c.aperture = {number(j, "alpha"), number(j, "focus_u"), number(j, "focus_v")};
  const auto r = numbers(j, "R", 9);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) c.pose.rotation(row, col) = r[3 * row + col];
  }
  const auto t = numbers(j, "t", 3);
  c.pose.translation = {t[0], t[1], t[2]};
  return c;
}

std::string to_json_lines(std::span<const FrameCamera> cameras) {
  std::string out;
  for (const auto& c : cameras) {
    out += to_json(c).dump();
    out += '\n';
  }
  return out;
}

std::vector<FrameCamera> parse_json_lines(const std::string& text) {
  std::vector<FrameCamera> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(camera_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError("camera params line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("camera params line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_camera_params(const std::filesystem::path& path, std::span<const FrameCamera> cameras) {
  binary::write_text(path, to_json_lines(cameras));
}

std::vector<FrameCamera> read_camera_params(const std::filesystem::path& path) {
  const std::string text = binary::read_text(path);
  try {
    return parse_json_lines(text);
  } catch (const ParseError&) {
    // A pretty-printed single object spans several lines.
    try {
      return {camera_from_json(json::parse(text))};
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
}

void write_camera_maps(const std::filesystem::path& path, std::span<const CameraMap> maps) {
  const int h = maps.empty() ? 0 : maps.front().height();
  const int w = maps.empty() ? 0 : maps.front().width();
  std::vector<unsigned char> bytes;
  bytes.reserve(16 + maps.size() * CameraMap::kChannels * static_cast<std::size_t>(h) * w * 4);
  bytes.insert(bytes.end(), {'A', 'K', 'M', 'P'});
  binary::put_u32(bytes, static_cast<std::uint32_t>(h));
  binary::put_u32(bytes, static_cast<std::uint32_t>(w));
  binary::put_u32(bytes, static_cast<std::uint32_t>(maps.size()));
  for (const auto& m : maps) {
    if (m.height() != h || m.width() != w) {
      throw DimensionMismatch("camera maps in one file must share a frame size");
    }
    for (float v : m.data()) binary::put_f32(bytes, v);
  }
  binary::write_file(path, bytes);
}

std::vector<CameraMap> read_camera_maps(const std::filesystem::path& path) {
  const auto bytes = binary::read_file(path);
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "AKMP", 4) != 0) {
    throw ParseError(path.string() + ": bad camera-map magic at offset 0");
  }
  const std::uint32_t h = binary::get_u32(bytes.data() + 4);
  const std::uint32_t w = binary::get_u32(bytes.data() + 8);
  const std::uint32_t n = binary::get_u32(bytes.data() + 12);
  const std::size_t per_frame = static_cast<std::size_t>(CameraMap::kChannels) * h * w;
  if (bytes.size() != 16 + static_cast<std::size_t>(n) * per_frame * 4) {
    throw ParseError(path.string() + ": camera-map payload size does not match header");
  }
  std::vector<CameraMap> maps;
  maps.reserve(n);
  const unsigned char* p = bytes.data() + 16;
  for (std::uint32_t f = 0; f < n; ++f) {
    CameraMap m(static_cast<int>(w), static_cast<int>(h));
    for (float& v : m.data()) {
      v = binary::get_f32(p);
      p += 4;
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

}  // namespace akira
