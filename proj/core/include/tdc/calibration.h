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

#ifndef TDC_CALIBRATION_H_
#define TDC_CALIBRATION_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tdc/geometry.h"

namespace tdc {

// "KEY: v1 v2 ..." lines. Non-numeric values (calib_time) are skipped.
using CalibFile = std::map<std::string, std::vector<double>>;
CalibFile ReadCalibFile(const std::filesystem::path& path);

// The KITTI raw calibration chain for one rectified camera.
struct CalibBundle {
  // Rectified intrinsics of the target camera (from P_rect_0N, S_rect_0N).
  Intrinsics intrinsics;
  // R_rect_00 with zero translation.
  RigidTransform rectification;
  // Velodyne -> unrectified camera 0.
  RigidTransform lidar_to_camera;
  // IMU -> Velodyne.
  RigidTransform imu_to_lidar;
  // Offset of the target camera in rectified camera-0 coordinates,
  // recovered from the fourth column of P_rect_0N.
  Eigen::Vector3d baseline = Eigen::Vector3d::Zero();

  // Velodyne -> rectified target camera.
  RigidTransform CameraFromLidar() const;
  // IMU -> rectified target camera.
  RigidTransform CameraFromImu() const;

  // Chain where every extrinsic is the identity.
  static CalibBundle Identity(const Intrinsics& k);
};

// Loads calib_cam_to_cam.txt, calib_velo_to_cam.txt and calib_imu_to_velo.txt
// from `dir`. `camera` selects P_rect_0N (2 = left color camera).
CalibBundle LoadCalibBundle(const std::filesystem::path& dir, int camera = 2);
CalibBundle LoadCalibBundle(const std::filesystem::path& cam_to_cam,
                            const std::filesystem::path& velo_to_cam,
                            const std::filesystem::path& imu_to_velo,
                            int camera = 2);

// Writes the three files for `calib` in the KITTI layout under `dir`.
void WriteCalibBundle(const std::filesystem::path& dir, const CalibBundle& calib,
                      int camera = 2);

// Relative pose P mapping frame-a rectified camera coordinates into frame-b
// rectified camera coordinates, given world <- IMU poses of both frames.
RigidTransform RelativeCameraPose(const RigidTransform& world_from_imu_a,
                                  const RigidTransform& world_from_imu_b,
                                  const CalibBundle& calib);

}  // namespace tdc

#endif  // TDC_CALIBRATION_H_
