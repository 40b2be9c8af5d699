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

#include "tdc/calibration.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tdc/errors.h"

namespace tdc {
namespace {

const std::vector<double>& Require(const CalibFile& file, const std::string& key,
                                   size_t count,
                                   const std::filesystem::path& path) {
  const auto it = file.find(key);
  if (it == file.end()) {
    throw FormatError(path.string() + ": missing key '" + key + "'");
  }
  if (it->second.size() != count) {
    throw FormatError(path.string() + ": key '" + key + "' has " +
                      std::to_string(it->second.size()) + " values, expected " +
                      std::to_string(count));
  }
  return it->second;
}

Eigen::Matrix3d RowMajor3x3(const std::vector<double>& v) {
  Eigen::Matrix3d m;
  m << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
  return m;
}

RigidTransform ReadRT(const std::filesystem::path& path) {
  const CalibFile file = ReadCalibFile(path);
  const auto& r = Require(file, "R", 9, path);
  const auto& t = Require(file, "T", 3, path);
  return RigidTransform::FromApproximateRotation(
      RowMajor3x3(r), Eigen::Vector3d(t[0], t[1], t[2]));
}

std::string Join(std::initializer_list<double> values) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(12);
  bool first = true;
  for (double v : values) {
    if (!first) out << ' ';
    out << v;
    first = false;
  }
  return out.str();
}

std::string JoinRotation(const Eigen::Matrix3d& r) {
  return Join({r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0),
               r(2, 1), r(2, 2)});
}

void WriteRT(const std::filesystem::path& path, const RigidTransform& rt) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  const Eigen::Vector3d& t = rt.translation();
  out << "calib_time: synthetic\n"
      << "R: " << JoinRotation(rt.rotation()) << "\n"
      << "T: " << Join({t.x(), t.y(), t.z()}) << "\n";
}

}  // namespace

CalibFile ReadCalibFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  CalibFile out;
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = line.substr(0, colon);
    std::istringstream values(line.substr(colon + 1));
    std::vector<double> parsed;
    std::string token;
    bool numeric = true;
    while (values >> token) {
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        numeric = false;
        break;
      }
      parsed.push_back(v);
    }
    if (numeric) out[key] = std::move(parsed);
  }
  return out;
}

RigidTransform CalibBundle::CameraFromLidar() const {
  return RigidTransform::Translation(baseline) * rectification *
         lidar_to_camera;
}

RigidTransform CalibBundle::CameraFromImu() const {
  return CameraFromLidar() * imu_to_lidar;
}

CalibBundle CalibBundle::Identity(const Intrinsics& k) {
  CalibBundle calib;
  calib.intrinsics = k;
  return calib;
}

CalibBundle LoadCalibBundle(const std::filesystem::path& dir, int camera) {
  return LoadCalibBundle(dir / "calib_cam_to_cam.txt",
                         dir / "calib_velo_to_cam.txt",
                         dir / "calib_imu_to_velo.txt", camera);
}

CalibBundle LoadCalibBundle(const std::filesystem::path& cam_to_cam,
                            const std::filesystem::path& velo_to_cam,
                            const std::filesystem::path& imu_to_velo,
                            int camera) {
  const CalibFile c2c = ReadCalibFile(cam_to_cam);
  const std::string suffix = "_0" + std::to_string(camera);
  const auto& p = Require(c2c, "P_rect" + suffix, 12, cam_to_cam);
  const auto& s = Require(c2c, "S_rect" + suffix, 2, cam_to_cam);
  const auto& r_rect = Require(c2c, "R_rect_00", 9, cam_to_cam);

  CalibBundle calib;
  Intrinsics& k = calib.intrinsics;
  k.fx = p[0];
  k.cx = p[2];
  k.fy = p[5];
  k.cy = p[6];
  k.width = static_cast<int>(std::lround(s[0]));
  k.height = static_cast<int>(std::lround(s[1]));
  k.Validate();

  // P = K [I | b]  =>  b_z = P23, b_x = (P03 - cx b_z) / fx, likewise b_y.
  const double bz = p[11];
  calib.baseline = Eigen::Vector3d((p[3] - k.cx * bz) / k.fx,
                                   (p[7] - k.cy * bz) / k.fy, bz);
  calib.rectification = RigidTransform::FromApproximateRotation(
      RowMajor3x3(r_rect), Eigen::Vector3d::Zero());
  calib.lidar_to_camera = ReadRT(velo_to_cam);
  calib.imu_to_lidar = ReadRT(imu_to_velo);
  return calib;
}

void WriteCalibBundle(const std::filesystem::path& dir,
                      const CalibBundle& calib, int camera) {
  std::filesystem::create_directories(dir);
  const Intrinsics& k = calib.intrinsics;
  const Eigen::Vector3d& b = calib.baseline;
  const std::string suffix = "_0" + std::to_string(camera);
  {
    const auto path = dir / "calib_cam_to_cam.txt";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "calib_time: synthetic\n"
        << "R_rect_00: " << JoinRotation(calib.rectification.rotation()) << "\n"
        << "S_rect" << suffix << ": " << Join({double(k.width), double(k.height)})
        << "\n"
        << "P_rect" << suffix << ": "
        << Join({k.fx, 0.0, k.cx, k.fx * b.x() + k.cx * b.z(), 0.0, k.fy, k.cy,
                 k.fy * b.y() + k.cy * b.z(), 0.0, 0.0, 1.0, b.z()})
        << "\n";
  }
  WriteRT(dir / "calib_velo_to_cam.txt", calib.lidar_to_camera);
  WriteRT(dir / "calib_imu_to_velo.txt", calib.imu_to_lidar);
}

RigidTransform RelativeCameraPose(const RigidTransform& world_from_imu_a,
                                  const RigidTransform& world_from_imu_b,
                                  const CalibBundle& calib) {
  const RigidTransform cam_from_imu = calib.CameraFromImu();
  // World translations are Mercator metres in the millions. Subtract them
  // before rotating so nearby records keep full precision.
  const Eigen::Vector3d delta =
      world_from_imu_a.translation() - world_from_imu_b.translation();
  const RigidTransform b_from_a =
      RigidTransform::Rotation(world_from_imu_b.rotation().transpose()) *
      RigidTransform::Translation(delta) *
      RigidTransform::Rotation(world_from_imu_a.rotation());
  return cam_from_imu * b_from_a * cam_from_imu.Inverse();
}

}  // namespace tdc
