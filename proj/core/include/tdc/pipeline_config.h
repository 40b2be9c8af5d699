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

#ifndef TDC_PIPELINE_CONFIG_H_
#define TDC_PIPELINE_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace tdc {

enum class FuseMode {
  // Lidar replaces the warped history wherever both exist.
  kSparseOverrides,
  // Lidar and history are averaged with weights 1 and the history's
  // confidence.
  kConfidenceBlend,
};

std::string_view ToString(FuseMode mode);
FuseMode ParseFuseMode(std::string_view text);

struct PipelineConfig {
  FuseMode fuse_mode = FuseMode::kSparseOverrides;
  // Initial search radius of the inverse-distance fill (pixels).
  int fill_radius = 1;
  int refine_iterations = 12;
  // Bilateral bandwidth on [0, 1] intensities.
  double affinity_bandwidth = 0.1;
  // Confidence multiplier per carried frame.
  double confidence_decay = 0.9;
  // Carried samples whose confidence drops below this are forgotten.
  double min_confidence = 0.55;
  // A carried sample is hidden when the warped prediction holds a surface
  // closer by more than this fraction within one pixel.
  double surface_margin = 0.1;

  // Throws DomainError on a field outside its valid range.
  void Validate() const;
};

// Reads a TOML file with a [pipeline] table (or top-level keys):
//   fuse_mode = "sparse-overrides" | "confidence-blend"
//   fill_radius, refine_iterations, affinity_bandwidth, confidence_decay,
//   min_confidence, surface_margin
// Missing keys keep their defaults.
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);
PipelineConfig ParsePipelineConfig(std::string_view toml_text);

}  // namespace tdc

#endif  // TDC_PIPELINE_CONFIG_H_
