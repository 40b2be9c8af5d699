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

#ifndef TDC_ANALYSIS_H_
#define TDC_ANALYSIS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdc/grid.h"
#include "tdc/png_io.h"

namespace tdc {

// Per-block difference of mean absolute errors (mm). Blocks without a
// valid ground-truth pixel hold std::nullopt.
struct BlockDiffMap {
  int block = 8;
  Grid<std::optional<double>> diff;
};

// MAE(A) - MAE(B) per block over pixels with gt > 0. Grid dimensions are
// ceil(size / block).
BlockDiffMap BlockErrorDiff(const DepthMap& pred_a, const DepthMap& pred_b,
                            const DepthMap& gt, int block = 8);

// Averages block maps over frames, each block over the frames where it is
// nonempty.
class BlockDiffAccumulator {
 public:
  void Add(const BlockDiffMap& map);
  BlockDiffMap Mean() const;
  int frames() const { return frames_; }

 private:
  int block_ = 0;
  int frames_ = 0;
  Grid<double> sum_;
  Grid<int> count_;
};

// Renders each block as a block x block tile. Values map linearly from
// [-range, range] to [0, 1] of the Turbo colormap (0 diff = mid colormap);
// empty blocks are black. A non-positive range uses the largest |diff|.
Grid<Rgb> RenderBlockDiff(const BlockDiffMap& map, int image_width,
                          int image_height, double range = 0.0);

// Frame-indexed mean RMSE across sequences. Entry i averages frame i of
// every sequence that is long enough. Frame numbers in the output start at 1.
std::vector<std::pair<int, double>> PerFrameRmse(
    const std::vector<std::vector<double>>& rmse_per_sequence);

// CSV with header "frame,rmse_mm".
std::string PerFrameRmseCsv(const std::vector<std::pair<int, double>>& curve);

}  // namespace tdc

#endif  // TDC_ANALYSIS_H_
