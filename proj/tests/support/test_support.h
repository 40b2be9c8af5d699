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

#ifndef TDC_TESTS_SUPPORT_TEST_SUPPORT_H_
#define TDC_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "tdc/geometry.h"
#include "tdc/grid.h"
#include "tdc/warp.h"

namespace tdc::testing {

std::filesystem::path FixtureDir();
// Fresh, empty directory under the system temp dir.
std::filesystem::path ScratchDir(const std::string& name);

Intrinsics SmallIntrinsics(int width = 64, int height = 48);

// Smooth positive depth field (sum of a slanted plane and low-frequency
// bumps) with an optional fraction of invalid pixels.
DepthMap RandomSmoothDepth(std::mt19937_64& rng, int width, int height,
                           double invalid_fraction = 0.0);

// Rotation of at most `max_angle` radians about a random axis plus a
// translation with components in [-max_shift, max_shift].
RigidTransform RandomSmallPose(std::mt19937_64& rng, double max_angle,
                               double max_shift);

// Sequential reference of the forward warp: one pass over source pixels in
// row-major order keeping the first strictly smaller depth per target. Uses
// the same per-pixel arithmetic as the library so results can be compared
// bit for bit; only the conflict resolution differs in structure.
DepthMap ReferenceWarpSequential(const DepthMap& prev, const Intrinsics& k,
                                 const RigidTransform& pose,
                                 std::vector<int64_t>* winners = nullptr);

// Brute-force per-block MAE difference in mm; NaN for empty blocks.
std::vector<std::vector<double>> BruteForceBlockDiff(const DepthMap& a,
                                                     const DepthMap& b,
                                                     const DepthMap& gt,
                                                     int block);

// Central finite difference of the warped depth at `target` with respect to
// the source depth at `source`. Returns false if either perturbed warp
// assigns `target` to a different winner.
bool WarpFiniteDifference(const DepthMap& prev, const Intrinsics& k,
                          const RigidTransform& pose, size_t source,
                          size_t target, double step, double* derivative);

}  // namespace tdc::testing

#endif  // TDC_TESTS_SUPPORT_TEST_SUPPORT_H_
