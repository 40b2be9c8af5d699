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

#include "tdc/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tdc/errors.h"
#include "tdc/turbo.h"

namespace tdc {

BlockDiffMap BlockErrorDiff(const DepthMap& pred_a, const DepthMap& pred_b,
                            const DepthMap& gt, int block) {
  RequireSameShape(pred_a, gt, "block_error_diff");
  RequireSameShape(pred_b, gt, "block_error_diff");
  if (block <= 0) throw DomainError("block_error_diff: block size must be > 0");
  const int bw = (gt.width() + block - 1) / block;
  const int bh = (gt.height() + block - 1) / block;
  BlockDiffMap out{block, Grid<std::optional<double>>(bw, bh)};
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      double err_a = 0.0;
      double err_b = 0.0;
      int n = 0;
      const int y1 = std::min(gt.height(), (by + 1) * block);
      const int x1 = std::min(gt.width(), (bx + 1) * block);
      for (int y = by * block; y < y1; ++y) {
        for (int x = bx * block; x < x1; ++x) {
          const double g = gt(x, y);
          if (!(g > 0.0)) continue;
          err_a += std::abs(pred_a(x, y) - g);
          err_b += std::abs(pred_b(x, y) - g);
          ++n;
        }
      }
      if (n > 0) {
        // The two means share the same divisor, so swapping A and B flips
        // the sign exactly.
        out.diff(bx, by) = 1000.0 * (err_a / n - err_b / n);
      }
    }
  }
  return out;
}

void BlockDiffAccumulator::Add(const BlockDiffMap& map) {
  if (frames_ == 0) {
    block_ = map.block;
    sum_ = Grid<double>(map.diff.width(), map.diff.height(), 0.0);
    count_ = Grid<int>(map.diff.width(), map.diff.height(), 0);
  } else if (map.block != block_ || !map.diff.SameShape(sum_)) {
    throw DimensionError("block diff accumulator: incompatible block map");
  }
  for (size_t i = 0; i < map.diff.size(); ++i) {
    if (map.diff[i]) {
      sum_[i] += *map.diff[i];
      ++count_[i];
    }
  }
  ++frames_;
}

BlockDiffMap BlockDiffAccumulator::Mean() const {
  BlockDiffMap out{block_, Grid<std::optional<double>>(sum_.width(), sum_.height())};
  for (size_t i = 0; i < sum_.size(); ++i) {
    if (count_[i] > 0) out.diff[i] = sum_[i] / count_[i];
  }
  return out;
}

Grid<Rgb> RenderBlockDiff(const BlockDiffMap& map, int image_width,
                          int image_height, double range) {
  if (range <= 0.0) {
    for (size_t i = 0; i < map.diff.size(); ++i) {
      if (map.diff[i]) range = std::max(range, std::abs(*map.diff[i]));
    }
    if (range <= 0.0) range = 1.0;
  }
  Grid<Rgb> image(image_width, image_height, Rgb{0, 0, 0});
  for (int y = 0; y < image_height; ++y) {
    for (int x = 0; x < image_width; ++x) {
      const int bx = x / map.block;
      const int by = y / map.block;
      if (!map.diff.Contains(bx, by)) continue;
      const std::optional<double>& d = map.diff(bx, by);
      if (!d) continue;
      image(x, y) = TurboColormap(0.5 + 0.5 * (*d / range));
    }
  }
  return image;
}

std::vector<std::pair<int, double>> PerFrameRmse(
    const std::vector<std::vector<double>>& rmse_per_sequence) {
  size_t longest = 0;
  for (const auto& s : rmse_per_sequence) longest = std::max(longest, s.size());
  std::vector<std::pair<int, double>> curve;
  for (size_t i = 0; i < longest; ++i) {
    double sum = 0.0;
    int n = 0;
    for (const auto& s : rmse_per_sequence) {
      if (i < s.size()) {
        sum += s[i];
        ++n;
      }
    }
    curve.emplace_back(static_cast<int>(i) + 1, sum / n);
  }
  return curve;
}

std::string PerFrameRmseCsv(const std::vector<std::pair<int, double>>& curve) {
  std::ostringstream out;
  out << "frame,rmse_mm\n";
  char buf[64];
  for (const auto& [frame, rmse] : curve) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f\n", frame, rmse);
    out << buf;
  }
  return out.str();
}

}  // namespace tdc
