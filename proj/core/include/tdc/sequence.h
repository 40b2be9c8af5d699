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

#ifndef TDC_SEQUENCE_H_
#define TDC_SEQUENCE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tdc/calibration.h"
#include "tdc/crop.h"
#include "tdc/geometry.h"
#include "tdc/grid.h"
#include "tdc/oxts.h"

namespace tdc {

// On-disk description of a sequence: a JSON manifest. Relative paths are
// resolved against the manifest's directory.
struct SequenceIndex {
  struct Entry {
    int index = 0;
    std::string name;
    std::filesystem::path sparse;
    std::optional<std::filesystem::path> groundtruth;
    std::optional<std::filesystem::path> image;
    std::optional<OxtsRecord> oxts;
  };

  std::filesystem::path base_dir;
  // Directory holding the three KITTI calibration files.
  std::optional<std::filesystem::path> calib_dir;
  int camera = 2;
  // Used when there is no calibration directory.
  std::optional<Intrinsics> intrinsics;
  std::vector<Entry> frames;

  std::filesystem::path Resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : base_dir / p;
  }
  // Throws unless timestamps strictly increase and every named file exists.
  void Validate() const;
};

SequenceIndex ReadSequenceIndex(const std::filesystem::path& manifest);
void WriteSequenceIndex(const std::filesystem::path& manifest,
                        const SequenceIndex& index);

struct Frame {
  int index = 0;
  std::string name;
  DepthMap sparse;
  std::optional<DepthMap> groundtruth;
  std::optional<GrayImage> image;
};

// A sequence in memory. relative_poses[i] maps camera coordinates of frame i
// into frame i + 1; it is empty when poses are unknown.
struct Sequence {
  Intrinsics intrinsics;
  std::vector<Frame> frames;
  std::vector<RigidTransform> relative_poses;

  bool HasPoses() const {
    return !frames.empty() && relative_poses.size() + 1 == frames.size();
  }
};

// Reads every frame. Poses are derived from the OXTS records when all frames
// carry one and a calibration (or intrinsics with an identity chain) exists.
Sequence LoadSequence(const SequenceIndex& index);

// Crops every grid and shifts the intrinsics; poses are unchanged.
Sequence CropSequence(const Sequence& seq, int out_width, int out_height);

}  // namespace tdc

#endif  // TDC_SEQUENCE_H_
