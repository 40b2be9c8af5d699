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

#ifndef TDC_CROP_H_
#define TDC_CROP_H_

#include <string>
#include <utility>

#include "tdc/errors.h"
#include "tdc/geometry.h"
#include "tdc/grid.h"

namespace tdc {

// KITTI evaluation crop.
inline constexpr int kCropWidth = 1216;
inline constexpr int kCropHeight = 352;

struct CropWindow {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;

  Intrinsics Apply(const Intrinsics& k) const {
    return k.Cropped(left, top, width, height);
  }
};

// Keeps the bottom `out_height` rows and the horizontally centered
// `out_width` columns.
inline CropWindow BottomCenterWindow(int width, int height, int out_width,
                                     int out_height) {
  if (out_width <= 0 || out_height <= 0 || out_width > width ||
      out_height > height) {
    throw DimensionError("crop " + std::to_string(out_width) + "x" +
                         std::to_string(out_height) + " does not fit in " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  return {(width - out_width) / 2, height - out_height, out_width, out_height};
}

template <typename G>
G CropGrid(const G& in, const CropWindow& window) {
  G out(window.width, window.height);
  for (int y = 0; y < window.height; ++y) {
    for (int x = 0; x < window.width; ++x) {
      out(x, y) = in(x + window.left, y + window.top);
    }
  }
  return out;
}

template <typename G>
struct Cropped {
  G grid;
  CropWindow window;
};

template <typename G>
Cropped<G> BottomCenterCrop(const G& in, int out_width, int out_height) {
  const CropWindow window =
      BottomCenterWindow(in.width(), in.height(), out_width, out_height);
  return {CropGrid(in, window), window};
}

}  // namespace tdc

#endif  // TDC_CROP_H_
