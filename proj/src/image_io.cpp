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

#include "akira/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "binary_io.hpp"

namespace akira {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_fail(png_structp png, png_const_charp message) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  *what = message;
  png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

std::uint8_t quantize(float v) {
  const float c = v > 0.0f ? (v < 1.0f ? v : 1.0f) : 0.0f;  // NaN -> 0
  return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

}  // namespace

Image read_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw ParseError(path.string() + ": not a PNG file");
  }

  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, png_warn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng initialisation failed");
  }

  Image image;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError(path.string() + ": " + error);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<png_byte> buffer(rowbytes * h);
  rows.resize(h);
  for (int y = 0; y < h; ++y) rows[y] = buffer.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  image = Image(w, h, 3);
  auto data = image.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = buffer[i] / 255.0f;
  return image;
}

void write_png(const std::filesystem::path& path, const Image& image) {
  if (image.channels() != 3 && image.channels() != 1) {
    throw ConfigError("write_png supports 1 or 3 channels");
  }
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot create " + path.string());

  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, png_warn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng initialisation failed");
  }

  const auto src = image.data();
  std::vector<png_byte> buffer(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) buffer[i] = quantize(src[i]);
  const std::size_t rowbytes = static_cast<std::size_t>(image.width()) * image.channels();
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y) rows[y] = buffer.data() + y * rowbytes;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path.string() + ": " + error);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, image.width(), image.height(), 8,
               image.channels() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Image read_pfm(const std::filesystem::path& path) {
  const auto bytes = binary::read_file(path);
  // Header: three whitespace-separated text tokens lines: type, "W H", scale.
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
    return std::string(bytes.begin() + start, bytes.begin() + pos);
  };
  const std::string type = token();
  int channels = 0;
  if (type == "PF") {
    channels = 3;
  } else if (type == "Pf") {
    channels = 1;
  } else {
    throw ParseError(path.string() + ": bad PFM magic at offset 0");
  }
  int w = 0, h = 0;
  double scale = 0.0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    scale = std::stod(token());
  } catch (const std::exception&) {
    throw ParseError(path.string() + ": malformed PFM header");
  }
  if (w <= 0 || h <= 0 || scale == 0.0) throw ParseError(path.string() + ": malformed PFM header");
  ++pos;  // single whitespace byte after the scale

  const std::size_t count = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() < pos + count * 4) {
    throw ParseError(path.string() + ": PFM payload truncated");
  }
  const bool little = scale < 0.0;
  Image image(w, h, channels);
  const unsigned char* p = bytes.data() + pos;
  for (int y = h - 1; y >= 0; --y) {  // bottom-to-top
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        std::uint32_t raw;
        std::memcpy(&raw, p, 4);
        p += 4;
        if (little != (std::endian::native == std::endian::little)) raw = __builtin_bswap32(raw);
        image.at(x, y, c) = std::bit_cast<float>(raw);
      }
    }
  }
  return image;
}

void write_pfm(const std::filesystem::path& path, const Image& image) {
  if (image.channels() != 3 && image.channels() != 1) {
    throw ConfigError("write_pfm supports 1 or 3 channels");
  }
  std::ostringstream header;
  header << (image.channels() == 3 ? "PF" : "Pf") << '\n'
         << image.width() << ' ' << image.height() << '\n'
         << "-1.0\n";
  const std::string text = header.str();
  std::vector<unsigned char> bytes(text.begin(), text.end());
  bytes.reserve(bytes.size() + image.data().size() * 4);
  for (int y = image.height() - 1; y >= 0; --y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) binary::put_f32(bytes, image.at(x, y, c));
    }
  }
  binary::write_file(path, bytes);
}

}  // namespace akira
