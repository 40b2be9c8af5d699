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

#include "tdc/lidar.h"

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "tdc/crop.h"
#include "tdc/errors.h"
#include "test_support.h"

namespace tdc {
namespace {

CalibBundle CameraAlignedRig() {
  return CalibBundle::Identity(testing::SmallIntrinsics());
}

TEST(ProjectLidarTest, DropsPointsBehindCamera) {
  const std::vector<Eigen::Vector3d> scan = {{0, 0, -5}, {0, 0, 0}, {0, 0, 5}};
  const DepthMap d = ProjectLidar(scan, CameraAlignedRig());
  EXPECT_EQ(d.ValidCount(), 1u);
  EXPECT_EQ(d(32, 24), 5.0);
}

TEST(ProjectLidarTest, OverlapKeepsNearest) {
  // Both land on the principal pixel (same ray, scaled).
  const std::vector<Eigen::Vector3d> scan = {{0.081, 0.0, 8.1},
                                             {0.079, 0.0, 7.9}};
  const DepthMap d = ProjectLidar(scan, CameraAlignedRig());
  EXPECT_EQ(d.ValidCount(), 1u);
  EXPECT_EQ(d(33, 24), 7.9);
}

TEST(ProjectLidarTest, FrontoParallelWall) {
  const CalibBundle rig = CameraAlignedRig();
  std::vector<Eigen::Vector3d> scan;
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    for (double y = -4.0; y <= 4.0; y += 0.41) scan.emplace_back(x, y, 10.0);
  }
  const DepthMap d = ProjectLidar(scan, rig);
  EXPECT_GT(d.ValidCount(), 100u);
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0.0) EXPECT_NEAR(d[i], 10.0, 1e-6);
  }
}

TEST(ProjectLidarTest, UsesFullChainOnKittiCalibration) {
  const CalibBundle c =
      LoadCalibBundle(testing::FixtureDir() / "kitti_2011_09_26");
  // 20 m ahead of the lidar (x forward in the Velodyne frame).
  const std::vector<Eigen::Vector3d> scan = {{20.0, 0.0, 0.0}};
  const DepthMap d = ProjectLidar(scan, c);
  ASSERT_EQ(d.ValidCount(), 1u);
  const Eigen::Vector3d p = c.CameraFromLidar() * scan[0];
  size_t hit = 0;
  for (; hit < d.size() && d[hit] == 0.0; ++hit) {
  }
  EXPECT_EQ(d[hit], p.z());
  EXPECT_NEAR(static_cast<double>(hit % d.width()),
              c.intrinsics.fx * p.x() / p.z() + c.intrinsics.cx, 0.5);
}

TEST(ProjectLidarTest, CropCommutesWithProjection) {
  const CalibBundle full = LoadCalibBundle(testing::FixtureDir() / "kitti_2011_09_26");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> fwd(3.0, 60.0);
  std::uniform_real_distribution<double> side(-20.0, 20.0);
  std::uniform_real_distribution<double> up(-2.0, 1.0);
  std::vector<Eigen::Vector3d> scan(20000);
  for (auto& p : scan) p = {fwd(rng), side(rng), up(rng)};
  const DepthMap d = ProjectLidar(scan, full);
  const auto cropped = BottomCenterCrop(d, kCropWidth, kCropHeight);
  CalibBundle c = full;
  c.intrinsics = cropped.window.Apply(full.intrinsics);
  EXPECT_EQ(ProjectLidar(scan, c), cropped.grid);
}

TEST(VelodyneScanTest, RoundTrip) {
  const auto dir = testing::ScratchDir("velodyne");
  LidarScan scan;
  scan.points = {{1.5, -2.25, 0.125}, {10.0, 3.0, -1.0}};
  scan.reflectance = {0.5f, 0.25f};
  WriteVelodyneScan(dir / "a.bin", scan);
  EXPECT_EQ(std::filesystem::file_size(dir / "a.bin"), 32u);
  const LidarScan back = ReadVelodyneScan(dir / "a.bin");
  EXPECT_EQ(back.points, scan.points);
  EXPECT_EQ(back.reflectance, scan.reflectance);
}

TEST(VelodyneScanTest, RejectsTruncatedFile) {
  const auto dir = testing::ScratchDir("velodyne_bad");
  std::ofstream(dir / "a.bin", std::ios::binary) << "12345";
  EXPECT_THROW(ReadVelodyneScan(dir / "a.bin"), FormatError);
  EXPECT_THROW(ReadVelodyneScan(dir / "none.bin"), IoError);
}

}  // namespace
}  // namespace tdc
