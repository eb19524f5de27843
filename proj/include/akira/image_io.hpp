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

#include <filesystem>

#include "akira/image.hpp"

namespace akira {

/// 8-bit PNG to RGB (gray is replicated, alpha dropped), values scaled to [0,1].
Image read_png(const std::filesystem::path& path);
/// Writes 8-bit RGB (3 channels) or gray (1 channel); values clamped to [0,1]
/// and rounded to the nearest of 256 levels.
void write_png(const std::filesystem::path& path, const Image& image);

/// Portable float map: "PF" (3 channels) or "Pf" (1 channel), rows stored
/// bottom-to-top, byte order from the sign of the scale line.
Image read_pfm(const std::filesystem::path& path);
/// Always written little-endian (scale -1).
void write_pfm(const std::filesystem::path& path, const Image& image);

}  // namespace akira
