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

#ifndef TDC_LIDAR_H_
#define TDC_LIDAR_H_

#include <filesystem>
#include <span>
#include <vector>

#include "tdc/calibration.h"
#include "tdc/geometry.h"

namespace tdc {

struct LidarScan {
  PointCloud points;  // lidar frame, meters
  std::vector<float> reflectance;
};

// Little-endian float32 (x, y, z, reflectance) quadruples.
LidarScan ReadVelodyneScan(const std::filesystem::path& path);
void WriteVelodyneScan(const std::filesystem::path& path, const LidarScan& scan);

// Projects a lidar-frame scan into the rectified target camera with the
// same nearest-pixel, minimum-depth rule as WarpDepth. Output has the size
// of calib.intrinsics.
DepthMap ProjectLidar(std::span<const Eigen::Vector3d> scan,
                      const CalibBundle& calib);

}  // namespace tdc

#endif  // TDC_LIDAR_H_
