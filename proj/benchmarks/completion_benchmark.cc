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

#include <optional>

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "tdc/completion.h"
#include "tdc/pipeline_config.h"

namespace tdc {
namespace {

Grid<double> LidarWeight(const DepthMap& sparse) {
  Grid<double> w(sparse.width(), sparse.height(), 0.0);
  for (int y = 0; y < sparse.height(); ++y) {
    for (int x = 0; x < sparse.width(); ++x) {
      if (sparse(x, y) > 0.0) w(x, y) = 1.0;
    }
  }
  return w;
}

void BM_SpatialComplete(benchmark::State& state) {
  const Frame& f = bench::Street().sequence.frames[0];
  const Grid<double> weight = LidarWeight(f.sparse);
  const PipelineConfig cfg;
  const GrayImage* guide = state.range(0) != 0 ? &*f.image : nullptr;
  for (auto _ : state) {
    DepthMap d = SpatialComplete(f.sparse, weight, guide, cfg);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_SpatialComplete)
    ->ArgName("guided")
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_CspnRefine(benchmark::State& state) {
  const Frame& f = bench::Street().sequence.frames[0];
  PipelineConfig cfg;
  cfg.refine_iterations = static_cast<int>(state.range(0));
  const DepthMap coarse = SpatialComplete(f.sparse, LidarWeight(f.sparse), cfg);
  for (auto _ : state) {
    DepthMap d = CspnRefine(coarse, *f.image, f.sparse, cfg);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_CspnRefine)
    ->ArgName("iters")
    ->Arg(1)
    ->Arg(12)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_TemporalStep(benchmark::State& state) {
  const Sequence& seq = bench::Street().sequence;
  const PipelineConfig cfg;
  const Frame& f0 = seq.frames[0];
  const FrameInputs first{f0.sparse, &*f0.image, seq.intrinsics};
  const TemporalState carried =
      Step(first, TemporalState::Empty(f0.sparse.width(), f0.sparse.height()),
           seq.relative_poses[0], cfg)
          .next_state;
  const Frame& f1 = seq.frames[1];
  const FrameInputs second{f1.sparse, &*f1.image, seq.intrinsics};
  for (auto _ : state) {
    StepResult r = Step(second, carried, seq.relative_poses[1], cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_TemporalStep)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace tdc
