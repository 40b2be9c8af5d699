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

#ifndef TDC_COMPLETION_H_
#define TDC_COMPLETION_H_

#include <optional>
#include <vector>

#include "tdc/geometry.h"
#include "tdc/grid.h"
#include "tdc/metrics.h"
#include "tdc/pipeline_config.h"
#include "tdc/sequence.h"

namespace tdc {

// What one frame hands to the next: the warped previous prediction and a
// confidence in [0, 1] that is 0 exactly where no depth was carried.
struct TemporalState {
  DepthMap warped_prev;
  Grid<double> confidence;
  // Sub-pixel position of each carried sample relative to its pixel center,
  // in [-0.5, 0.5]. Empty grids read as zero offsets.
  Grid<double> offset_u;
  Grid<double> offset_v;

  static TemporalState Empty(int width, int height);
  bool IsEmpty() const { return warped_prev.ValidCount() == 0; }
  // Throws DomainError if the confidence/depth invariants are broken.
  void CheckInvariants() const;
};

struct FusedSeed {
  DepthMap depth;
  // 1 at lidar pixels, the carried confidence at history pixels, 0 elsewhere.
  Grid<double> weight;
  // Sub-pixel sample positions; zero at lidar pixels.
  Grid<double> offset_u;
  Grid<double> offset_v;
};

FusedSeed FuseTemporal(const DepthMap& sparse, const TemporalState& state,
                       const PipelineConfig& cfg);

// Inverse-distance fill of every empty pixel from the valid pixels within
// cfg.fill_radius, doubling the radius until a donor is found. Donors are
// weighted by weight / distance^2. Valid seed pixels are returned unchanged.
DepthMap SpatialComplete(const DepthMap& seed, const Grid<double>& weight,
                         const PipelineConfig& cfg);
// Guided variant: donor weights are further multiplied by the bilateral
// term exp(-(guide(p) - guide(q))^2 / bandwidth^2), as in CspnRefine. A null
// guide gives the unguided fill.
DepthMap SpatialComplete(const DepthMap& seed, const Grid<double>& weight,
                         const GrayImage* guide, const PipelineConfig& cfg);

// Anchored propagation with bilateral affinities from `guide`: each
// iteration replaces every pixel by the normalized affinity-weighted mean of
// its 3x3 neighborhood, then resets pixels with anchors > 0.
DepthMap CspnRefine(const DepthMap& coarse, const GrayImage& guide,
                    const DepthMap& anchors, const PipelineConfig& cfg);

// Next-frame state. Every seed sample (lidar or carried) is moved as the
// 3-D point at its sub-pixel position, so repeated warps do not drift, and
// scattered with the minimum-depth rule; its confidence becomes
// confidence_decay * weight. Visibility is decided against the warped dense
// `prediction`: a sample is dropped when that map holds a surface closer by
// more than cfg.surface_margin within one pixel, which also covers the
// one-pixel holes an approaching foreground leaves in the z-buffer. Samples
// below cfg.min_confidence are dropped.
TemporalState CarrySamples(const FusedSeed& seed, const DepthMap& prediction,
                           const Intrinsics& k,
                           const RigidTransform& pose_to_next,
                           const PipelineConfig& cfg);

struct FrameInputs {
  const DepthMap& sparse;
  // Uniform guide when absent.
  const GrayImage* image = nullptr;
  const Intrinsics& intrinsics;
};

struct StepResult {
  DepthMap prediction;
  // Seed of this frame, kept for diagnostics.
  FusedSeed fused;
  TemporalState next_state;
};

// One recurrence step: fuse, complete, refine, then warp the confident part
// of the prediction into the next frame. Without `pose_to_next` (last frame)
// the next state is empty.
StepResult Step(const FrameInputs& frame, const TemporalState& state,
                const std::optional<RigidTransform>& pose_to_next,
                const PipelineConfig& cfg);

struct FrameResult {
  DepthMap prediction;
  std::optional<MetricsReport> metrics;
  // Valid fraction of the fused seed.
  double seed_density = 0.0;
};

struct SequenceResult {
  std::vector<FrameResult> frames;
};

// Runs the pipeline over all frames in order. With temporal = false each
// frame starts from an empty state. Throws DomainError when temporal is on
// and the sequence has no poses.
SequenceResult RunSequence(const Sequence& seq, const PipelineConfig& cfg,
                           bool temporal);

}  // namespace tdc

#endif  // TDC_COMPLETION_H_
