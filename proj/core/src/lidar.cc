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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "tdc/errors.h"
#include "tdc/parallel.h"
#include "tdc/warp.h"

namespace tdc {
namespace {

static_assert(std::endian::native == std::endian::little,
              "velodyne scans are read in host byte order");

}  // namespace

LidarScan ReadVelodyneScan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  if (bytes.size() % (4 * sizeof(float)) != 0) {
    throw FormatError("'" + path.string() +
                      "' is not a sequence of float32 quadruples");
  }
  const size_t n = bytes.size() / (4 * sizeof(float));
  LidarScan scan;
  scan.points.reserve(n);
  scan.reflectance.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    std::array<float, 4> q{};
    std::memcpy(q.data(), bytes.data() + i * sizeof(q), sizeof(q));
    if (!std::isfinite(q[0]) || !std::isfinite(q[1]) || !std::isfinite(q[2])) {
      throw FormatError("'" + path.string() + "': non-finite point " +
                        std::to_string(i));
    }
    scan.points.emplace_back(q[0], q[1], q[2]);
    scan.reflectance.push_back(q[3]);
  }
  return scan;
}

void WriteVelodyneScan(const std::filesystem::path& path,
                       const LidarScan& scan) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (size_t i = 0; i < scan.points.size(); ++i) {
    const std::array<float, 4> q{
        static_cast<float>(scan.points[i].x()),
        static_cast<float>(scan.points[i].y()),
        static_cast<float>(scan.points[i].z()),
        i < scan.reflectance.size() ? scan.reflectance[i] : 0.0f};
    out.write(reinterpret_cast<const char*>(q.data()), sizeof(q));
  }
}

DepthMap ProjectLidar(std::span<const Eigen::Vector3d> scan,
                      const CalibBundle& calib) {
  const Intrinsics& k = calib.intrinsics;
  const RigidTransform cam_from_lidar = calib.CameraFromLidar();
  const size_t n = scan.size();
  std::vector<int64_t> target(n, -1);
  std::vector<double> depth(n, 0.0);
  ParallelFor(n, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const Eigen::Vector3d p = cam_from_lidar * scan[i];
      if (!(p.z() > kMinDepth)) continue;
      int x = 0;
      int y = 0;
      if (!RasterizeNearest(k.fx * p.x() / p.z() + k.cx,
                            k.fy * p.y() / p.z() + k.cy, k.width, k.height, &x,
                            &y)) {
        continue;
      }
      target[i] = static_cast<int64_t>(y) * k.width + x;
      depth[i] = p.z();
    }
  });
  const std::vector<int64_t> winner = ResolveMinDepthScatter(
      target, depth, static_cast<size_t>(k.width) * k.height);
  DepthMap out(k.width, k.height, 0.0);
  for (size_t j = 0; j < winner.size(); ++j) {
    if (winner[j] >= 0) out[j] = depth[static_cast<size_t>(winner[j])];
  }
  return out;
}

}  // namespace tdc
