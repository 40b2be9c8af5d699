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

#ifndef TDC_OXTS_H_
#define TDC_OXTS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tdc/geometry.h"

namespace tdc {

inline constexpr double kEarthRadius = 6378137.0;

// One line of a KITTI raw OXTS log. Only the leading six fields carry
// meaning here; the rest are kept verbatim as reals.
struct OxtsRecord {
  double lat = 0.0;    // degrees
  double lon = 0.0;    // degrees
  double alt = 0.0;    // meters
  double roll = 0.0;   // radians
  double pitch = 0.0;  // radians
  double yaw = 0.0;    // radians
  std::vector<double> extra;

  void Validate() const;
};

// Parses a whitespace-separated record; needs at least six numeric fields.
OxtsRecord ParseOxtsLine(std::string_view line);
OxtsRecord ReadOxtsFile(const std::filesystem::path& path);
// Formats a 30-field record with round-trippable precision.
std::string FormatOxtsLine(const OxtsRecord& record);

// Mercator scale of a sequence, cos(lat0).
double MercatorScale(double lat0_degrees);

// World <- IMU pose. Translation is the scaled Mercator position plus
// altitude, rotation is Rz(yaw) * Ry(pitch) * Rx(roll). Throws DomainError
// for |lat| >= 90.
RigidTransform OxtsToWorldPose(const OxtsRecord& record,
                               double scale_lat0_degrees);

// Inverse of OxtsToWorldPose for poses away from the pitch singularity.
OxtsRecord WorldPoseToOxts(const RigidTransform& world_from_imu,
                           double scale_lat0_degrees);

}  // namespace tdc

#endif  // TDC_OXTS_H_
