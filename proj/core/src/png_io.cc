// Copyright 2026 The TDC Authors. All Rights Reserved.
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

#include "tdc/png_io.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "tdc/errors.h"

namespace tdc {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr OpenFile(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  return f;
}

void ErrorFn(png_structp png, png_const_charp msg) {
  auto* message = static_cast<std::string*>(png_get_error_ptr(png));
  if (message != nullptr) *message = msg;
  png_longjmp(png, 1);
}

void WarningFn(png_structp, png_const_charp) {}

// Decoded PNG samples in host order, either 8 or 16 bits per sample.
struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<uint16_t> samples;
};

RawImage ReadRaw(const std::filesystem::path& path) {
  FilePtr file = OpenFile(path, "rb");
  png_byte signature[8] = {};
  if (std::fread(signature, 1, 8, file.get()) != 8 ||
      png_sig_cmp(signature, 0, 8) != 0) {
    throw FormatError("'" + path.string() + "' is not a PNG file");
  }

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message,
                                           ErrorFn, WarningFn);
  if (png == nullptr) throw FormatError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw FormatError("png_create_info_struct failed");
  }

  RawImage raw;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("'" + path.string() + "': " + message);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY &&
      png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_bit_depth(png, info) == 16) png_set_swap(png);
  png_read_update_info(png, info);

  raw.width = static_cast<int>(png_get_image_width(png, info));
  raw.height = static_cast<int>(png_get_image_height(png, info));
  raw.channels = png_get_channels(png, info);
  raw.bit_depth = png_get_bit_depth(png, info);
  const size_t row_bytes = png_get_rowbytes(png, info);
  buffer.resize(row_bytes * static_cast<size_t>(raw.height));
  rows.resize(static_cast<size_t>(raw.height));
  for (int y = 0; y < raw.height; ++y) {
    rows[static_cast<size_t>(y)] = buffer.data() + row_bytes * y;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const size_t count = static_cast<size_t>(raw.width) *
                       static_cast<size_t>(raw.height) *
                       static_cast<size_t>(raw.channels);
  raw.samples.resize(count);
  if (raw.bit_depth == 16) {
    for (int y = 0; y < raw.height; ++y) {
      const auto* src = reinterpret_cast<const uint16_t*>(rows[y]);
      std::copy_n(src, static_cast<size_t>(raw.width * raw.channels),
                  raw.samples.begin() + static_cast<ptrdiff_t>(
                                            y * raw.width * raw.channels));
    }
  } else {
    for (int y = 0; y < raw.height; ++y) {
      std::copy_n(rows[y], static_cast<size_t>(raw.width * raw.channels),
                  raw.samples.begin() + static_cast<ptrdiff_t>(
                                            y * raw.width * raw.channels));
    }
  }
  return raw;
}

void WriteRaw(const std::filesystem::path& path, int width, int height,
              int color_type, int bit_depth,
              const std::vector<png_bytep>& rows) {
  FilePtr file = OpenFile(path, "wb");
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            ErrorFn, WarningFn);
  if (png == nullptr) throw FormatError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw FormatError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("writing '" + path.string() + "': " + message);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

uint16_t EncodeDepth(double meters) {
  if (!std::isfinite(meters) || meters < 0.0) {
    throw RangeError("depth " + std::to_string(meters) +
                     " m cannot be encoded");
  }
  const double code = std::round(meters * kDepthPngScale);
  if (code > 65535.0) {
    throw RangeError("depth " + std::to_string(meters) +
                     " m exceeds the 16-bit PNG range");
  }
  return static_cast<uint16_t>(code);
}

DepthMap ReadDepthPng(const std::filesystem::path& path) {
  const RawImage raw = ReadRaw(path);
  if (raw.bit_depth != 16 || raw.channels != 1) {
    throw FormatError("'" + path.string() +
                      "' is not a 16-bit single-channel PNG (bit depth " +
                      std::to_string(raw.bit_depth) + ", " +
                      std::to_string(raw.channels) + " channels)");
  }
  DepthMap depth(raw.width, raw.height, 0.0);
  for (size_t i = 0; i < depth.size(); ++i) {
    depth[i] = DecodeDepth(raw.samples[i]);
  }
  return depth;
}

void WriteDepthPng(const std::filesystem::path& path, const DepthMap& depth) {
  std::vector<uint16_t> codes(depth.size());
  for (size_t i = 0; i < depth.size(); ++i) codes[i] = EncodeDepth(depth[i]);
  std::vector<png_bytep> rows(static_cast<size_t>(depth.height()));
  for (int y = 0; y < depth.height(); ++y) {
    rows[static_cast<size_t>(y)] =
        reinterpret_cast<png_bytep>(codes.data() + depth.Index(0, y));
  }
  WriteRaw(path, depth.width(), depth.height(), PNG_COLOR_TYPE_GRAY, 16, rows);
}

GrayImage ReadGrayPng(const std::filesystem::path& path) {
  const RawImage raw = ReadRaw(path);
  const double max_value = raw.bit_depth == 16 ? 65535.0 : 255.0;
  GrayImage image(raw.width, raw.height, 0.0);
  const size_t c = static_cast<size_t>(raw.channels);
  for (size_t i = 0; i < image.size(); ++i) {
    const uint16_t* px = raw.samples.data() + i * c;
    double value = 0.0;
    if (c >= 3) {
      // Rec. 601 luma; alpha is ignored.
      value = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
    } else {
      value = px[0];
    }
    image[i] = value / max_value;
  }
  return image;
}

void WriteGrayPng(const std::filesystem::path& path, const GrayImage& image) {
  std::vector<uint8_t> bytes(image.size());
  for (size_t i = 0; i < image.size(); ++i) {
    bytes[i] = static_cast<uint8_t>(
        std::lround(std::clamp(image[i], 0.0, 1.0) * 255.0));
  }
  std::vector<png_bytep> rows(static_cast<size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) {
    rows[static_cast<size_t>(y)] = bytes.data() + image.Index(0, y);
  }
  WriteRaw(path, image.width(), image.height(), PNG_COLOR_TYPE_GRAY, 8, rows);
}

void WriteRgbPng(const std::filesystem::path& path, const Grid<Rgb>& image) {
  std::vector<uint8_t> bytes(image.size() * 3);
  for (size_t i = 0; i < image.size(); ++i) {
    std::copy(image[i].begin(), image[i].end(), bytes.begin() + 3 * i);
  }
  std::vector<png_bytep> rows(static_cast<size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) {
    rows[static_cast<size_t>(y)] = bytes.data() + 3 * image.Index(0, y);
  }
  WriteRaw(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 8, rows);
}

}  // namespace tdc
