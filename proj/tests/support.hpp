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

// Shared fixtures for the unit tests and the acceptance runner.

#include <filesystem>
#include <map>
#include <string>

#include "akira/image.hpp"

namespace support {

namespace fs = std::filesystem;

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs the CLI with `args` (already shell-quoted where needed).
RunResult run_cli(const std::string& args);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& text);

std::string sha256_hex(const std::string& bytes);
/// Relative path -> sha256 of every regular file below `dir`.
std::map<std::string, std::string> tree_digest(const fs::path& dir);

/// RGB checkerboard in [0.1, 0.9] with the given square size; no disparity.
akira::Frame checker_frame(int width, int height, int period = 8);

/// Two disparity planes: `inner` inside the half-open box, `outer` elsewhere.
/// Pixels are a smooth deterministic pattern so blur is visible everywhere.
akira::Frame two_plane_frame(int width, int height, int x0, int y0, int x1, int y1, float inner,
                             float outer);

}  // namespace support
