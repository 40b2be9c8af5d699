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

#include "tdc/sequence.h"

#include <fstream>

#include <gtest/gtest.h>

#include "tdc/errors.h"
#include "tdc/png_io.h"
#include "tdc/synth.h"
#include "test_support.h"

namespace tdc {
namespace {

namespace fs = std::filesystem;

synth::SyntheticSequence SmallDrive(int frames) {
  const Intrinsics small{110.0, 110.0, 80.0, 24.0, 160, 48};
  const RigidTransform start = RigidTransform::FromRotationTranslation(
      synth::CameraLookingAlongX(), Eigen::Vector3d(0, 0, 1.65));
  synth::LidarPattern pattern;
  pattern.density_target = 0.1;
  pattern.beam_rows = 16;
  return synth::MakeSequence(synth::MakeStreetScene(1),
                             synth::MakeDriveTrajectory(start, frames, 1.0, 0.02),
                             small, pattern);
}

TEST(SequenceIoTest, KittiLayoutRoundTrip) {
  const auto dir = testing::ScratchDir("sequence_layout");
  const synth::SyntheticSequence s = SmallDrive(3);
  const fs::path manifest =
      synth::WriteKittiLayout(dir, synth::MakeStreetScene(1), s);
  const SequenceIndex index = ReadSequenceIndex(manifest);
  ASSERT_EQ(index.frames.size(), 3u);
  EXPECT_TRUE(index.calib_dir.has_value());
  const Sequence seq = LoadSequence(index);
  ASSERT_TRUE(seq.HasPoses());
  EXPECT_EQ(seq.intrinsics, s.sequence.intrinsics);
  for (size_t i = 0; i < seq.relative_poses.size(); ++i) {
    EXPECT_LT(seq.relative_poses[i].MaxAbsDifference(s.sequence.relative_poses[i]),
              1e-6);
  }
  for (size_t i = 0; i < seq.frames.size(); ++i) {
    const DepthMap& a = seq.frames[i].sparse;
    const DepthMap& b = s.sequence.frames[i].sparse;
    for (size_t j = 0; j < a.size(); ++j) {
      EXPECT_LE(std::abs(a[j] - b[j]), 1.0 / 512.0);
    }
    ASSERT_TRUE(seq.frames[i].groundtruth.has_value());
    ASSERT_TRUE(seq.frames[i].image.has_value());
  }
  EXPECT_TRUE(fs::exists(dir / "oxts" / "data" / "0000000002.txt"));
}

TEST(SequenceIoTest, ManifestWriteReadIsStable) {
  const auto dir = testing::ScratchDir("sequence_manifest");
  WriteDepthPng(dir / "a.png", DepthMap(4, 3, 1.0));
  WriteDepthPng(dir / "b.png", DepthMap(4, 3, 2.0));
  SequenceIndex index;
  index.base_dir = dir;
  index.intrinsics = Intrinsics{3.0, 3.0, 2.0, 1.5, 4, 3};
  index.frames.push_back({0, "a", "a.png", std::nullopt, std::nullopt, std::nullopt});
  index.frames.push_back({1, "b", "b.png", fs::path("a.png"), std::nullopt,
                          std::nullopt});
  WriteSequenceIndex(dir / "m.json", index);
  const SequenceIndex back = ReadSequenceIndex(dir / "m.json");
  ASSERT_EQ(back.frames.size(), 2u);
  EXPECT_EQ(back.frames[1].groundtruth, fs::path("a.png"));
  EXPECT_FALSE(back.frames[0].groundtruth.has_value());
  EXPECT_EQ(*back.intrinsics, *index.intrinsics);
  const Sequence seq = LoadSequence(back);
  EXPECT_FALSE(seq.HasPoses());
  EXPECT_EQ(seq.frames[1].sparse(0, 0), 2.0);
}

TEST(SequenceIoTest, RejectsBadManifests) {
  const auto dir = testing::ScratchDir("sequence_bad");
  WriteDepthPng(dir / "a.png", DepthMap(4, 3, 1.0));
  auto write = [&](const std::string& text) {
    std::ofstream(dir / "m.json") << text;
    return dir / "m.json";
  };
  EXPECT_THROW(ReadSequenceIndex(dir / "none.json"), IoError);
  EXPECT_THROW(ReadSequenceIndex(write("{ not json")), FormatError);
  EXPECT_THROW(ReadSequenceIndex(write(R"({"format": "other", "frames": []})")),
               FormatError);
  EXPECT_THROW(ReadSequenceIndex(write(
                   R"({"format": "tdc-sequence", "frames": [
                        {"index": 1, "sparse": "a.png"},
                        {"index": 1, "sparse": "a.png"}]})")),
               FormatError);
  try {
    ReadSequenceIndex(write(R"({"format": "tdc-sequence", "frames": [
                                 {"index": 0, "sparse": "gone.png"}]})"));
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("gone.png"), std::string::npos);
  }
  // Neither calibration nor intrinsics.
  const SequenceIndex index = ReadSequenceIndex(write(
      R"({"format": "tdc-sequence", "frames": [{"index": 0, "sparse": "a.png"}]})"));
  EXPECT_THROW(LoadSequence(index), FormatError);
}

TEST(CropSequenceTest, CropsGridsAndIntrinsics) {
  const synth::SyntheticSequence s = SmallDrive(2);
  const Sequence c = CropSequence(s.sequence, 120, 40);
  EXPECT_EQ(c.intrinsics.width, 120);
  EXPECT_DOUBLE_EQ(c.intrinsics.cx, 80.0 - 20.0);
  EXPECT_DOUBLE_EQ(c.intrinsics.cy, 24.0 - 8.0);
  EXPECT_EQ(c.frames[1].sparse(0, 0), s.sequence.frames[1].sparse(20, 8));
  EXPECT_EQ(c.frames[0].groundtruth->width(), 120);
  EXPECT_EQ(c.relative_poses.size(), 1u);
}

}  // namespace
}  // namespace tdc
