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

#ifndef TDC_WARP_H_
#define TDC_WARP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tdc/geometry.h"
#include "tdc/grid.h"

namespace tdc {

// Bookkeeping of one forward warp. Source and target grids share the same
// shape. Entries for invalid or dropped source pixels hold kNoSource in
// `target_index` and 0 in `warped_depth`.
struct WarpCorrespondence {
  static constexpr int64_t kNoSource = -1;

  int width = 0;
  int height = 0;
  // Per target pixel: row-major index of the winning source pixel.
  std::vector<int64_t> winner;
  // Per source pixel: continuous target coordinates (NaN if not projected),
  // rasterized target index, camera-z after the transform and its partial
  // derivative with respect to the source depth.
  std::vector<double> target_u;
  std::vector<double> target_v;
  std::vector<int64_t> target_index;
  std::vector<double> warped_depth;
  std::vector<double> depth_jacobian;
};

struct WarpResult {
  DepthMap depth;
  WarpCorrespondence correspondence;
};

// Forward-warps `prev` with the relative pose `pose` (frame t-1 camera to
// frame t camera). Each valid source pixel is unprojected, moved,
// reprojected and rounded to its nearest target pixel. Conflicting samples
// resolve to the smallest depth; equal depths go to the lowest source index.
// The result does not depend on the thread count.
WarpResult WarpDepth(const DepthMap& prev, const Intrinsics& k,
                     const RigidTransform& pose);

// Vector-Jacobian product of WarpDepth with respect to the source depths.
GradientMap WarpBackward(const GradientMap& grad_out,
                         const WarpCorrespondence& corr);

// Carries a per-source-pixel quantity to the target grid along the winners;
// target pixels without a winner read `fill`.
Grid<double> GatherAlongWarp(const Grid<double>& source,
                             const WarpCorrespondence& corr,
                             double fill = 0.0);

// Min-depth scatter shared by the warp and the lidar projector. For every
// target slot returns the index of the winning candidate (smallest depth,
// then smallest candidate index) or -1. Candidates with target < 0 are
// ignored.
std::vector<int64_t> ResolveMinDepthScatter(std::span<const int64_t> target,
                                            std::span<const double> depth,
                                            size_t target_count);

}  // namespace tdc

#endif  // TDC_WARP_H_
