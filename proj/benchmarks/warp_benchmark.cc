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

#include <cstdint>

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "tdc/warp.h"

namespace tdc {
namespace {

void BM_WarpDepthDense(benchmark::State& state) {
  const Sequence& seq = bench::Street().sequence;
  const DepthMap& gt = *seq.frames[0].groundtruth;
  const RigidTransform& pose = seq.relative_poses[0];
  for (auto _ : state) {
    WarpResult r = WarpDepth(gt, seq.intrinsics, pose);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(gt.size()));
}
BENCHMARK(BM_WarpDepthDense)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_WarpDepthSparse(benchmark::State& state) {
  const Sequence& seq = bench::Street().sequence;
  const DepthMap& sparse = seq.frames[0].sparse;
  const RigidTransform& pose = seq.relative_poses[0];
  for (auto _ : state) {
    WarpResult r = WarpDepth(sparse, seq.intrinsics, pose);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_WarpDepthSparse)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_WarpBackward(benchmark::State& state) {
  const Sequence& seq = bench::Street().sequence;
  const DepthMap& gt = *seq.frames[0].groundtruth;
  const WarpResult fwd = WarpDepth(gt, seq.intrinsics, seq.relative_poses[0]);
  const GradientMap grad(gt.width(), gt.height(), 1.0);
  for (auto _ : state) {
    GradientMap g = WarpBackward(grad, fwd.correspondence);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_WarpBackward)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace tdc
