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

#include "support.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#ifndef AKIRA_KIT_CLI
#error "AKIRA_KIT_CLI must name the CLI binary"
#endif

namespace support {

namespace {
std::atomic<int> g_counter{0};
}

TempDir::TempDir(const std::string& tag) {
  path_ = fs::temp_directory_path() /
          ("akira_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(g_counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

RunResult run_cli(const std::string& args) {
  TempDir io("cli");
  const auto out = io / "stdout";
  const auto err = io / "stderr";
  const std::string cmd = std::string("'") + AKIRA_KIT_CLI + "' " + args + " >'" + out.string() +
                          "' 2>'" + err.string() + "'";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::map<std::string, std::string> tree_digest(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    out[fs::relative(e.path(), dir).string()] = sha256_hex(read_file(e.path()));
  }
  return out;
}

akira::Frame checker_frame(int width, int height, int period) {
  akira::Frame f;
  f.pixels = akira::Image(width, height, 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool on = ((x / period) + (y / period)) % 2 == 0;
      f.pixels.at(x, y, 0) = on ? 0.9f : 0.1f;
      f.pixels.at(x, y, 1) = on ? 0.7f : 0.2f;
      f.pixels.at(x, y, 2) = on ? 0.3f : 0.8f;
    }
  }
  return f;
}

akira::Frame two_plane_frame(int width, int height, int x0, int y0, int x1, int y1, float inner,
                             float outer) {
  akira::Frame f;
  f.pixels = akira::Image(width, height, 3);
  f.disparity = akira::Image(width, height, 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      f.pixels.at(x, y, 0) = static_cast<float>(0.5 + 0.4 * std::sin(0.37 * x + 0.11 * y));
      f.pixels.at(x, y, 1) = static_cast<float>(0.5 + 0.4 * std::cos(0.23 * y - 0.05 * x));
      f.pixels.at(x, y, 2) = ((x / 4 + y / 4) % 2) ? 0.8f : 0.2f;
      const bool in = x >= x0 && x < x1 && y >= y0 && y < y1;
      f.disparity->at(x, y) = in ? inner : outer;
    }
  }
  return f;
}

}  // namespace support
