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

#ifndef TDC_PNG_IO_H_
#define TDC_PNG_IO_H_

#include <array>
#include <cstdint>
#include <filesystem>

#include "tdc/grid.h"

namespace tdc {

// KITTI depth encoding: meters = stored / 256, stored 0 = invalid.
inline constexpr double kDepthPngScale = 256.0;

// Reads a 16-bit single-channel PNG. Throws FormatError for any other
// bit depth or channel layout and IoError if the file cannot be opened.
DepthMap ReadDepthPng(const std::filesystem::path& path);

// Writes `depth` as round(depth * 256). Throws RangeError for depths whose
// code exceeds 65535 (>= 256 m).
void WriteDepthPng(const std::filesystem::path& path, const DepthMap& depth);

// Quantizes to the nearest code representable in a depth PNG.
uint16_t EncodeDepth(double meters);
inline double DecodeDepth(uint16_t code) { return code / kDepthPngScale; }

// Reads any 8- or 16-bit gray or color PNG as luminance in [0, 1].
GrayImage ReadGrayPng(const std::filesystem::path& path);
// Writes an 8-bit gray PNG from values clamped to [0, 1].
void WriteGrayPng(const std::filesystem::path& path, const GrayImage& image);

using Rgb = std::array<uint8_t, 3>;
// Writes an 8-bit RGB PNG.
void WriteRgbPng(const std::filesystem::path& path, const Grid<Rgb>& image);

}  // namespace tdc

#endif  // TDC_PNG_IO_H_
