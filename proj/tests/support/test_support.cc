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

#include "test_support.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <unistd.h>

#ifndef TDC_FIXTURE_DIR
#error "TDC_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace tdc::testing {

std::filesystem::path FixtureDir() { return TDC_FIXTURE_DIR; }

std::filesystem::path ScratchDir(const std::string& name) {
  // ctest runs each case in its own process, possibly in parallel.
  const auto dir = std::filesystem::temp_directory_path() / "tdc_tests" /
                   std::to_string(::getpid()) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Intrinsics SmallIntrinsics(int width, int height) {
  return {0.9 * width, 0.9 * width, width / 2.0, height / 2.0, width, height};
}

DepthMap RandomSmoothDepth(std::mt19937_64& rng, int width, int height,
                           double invalid_fraction) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double base = 5.0 + 15.0 * u(rng);
  const double gx = (u(rng) - 0.5) * 0.6 / width;
  const double gy = (u(rng) - 0.5) * 0.6 / height;
  const double amp = 0.5 + u(rng);
  const double fx = 2.0 * std::numbers::pi * (0.5 + u(rng)) / width;
  const double fy = 2.0 * std::numbers::pi * (0.5 + u(rng)) / height;
  DepthMap d(width, height, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (invalid_fraction > 0.0 && u(rng) < invalid_fraction) continue;
      d(x, y) = base + base * (gx * x + gy * y) +
                amp * std::sin(fx * x) * std::cos(fy * y);
    }
  }
  return d;
}

RigidTransform RandomSmallPose(std::mt19937_64& rng, double max_angle,
                               double max_shift) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Vector3d axis(u(rng), u(rng), u(rng));
  if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitY();
  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(max_angle * u(rng), axis.normalized()).toRotationMatrix();
  return RigidTransform::FromRotationTranslation(
      r, Eigen::Vector3d(u(rng), u(rng), u(rng)) * max_shift);
}

DepthMap ReferenceWarpSequential(const DepthMap& prev, const Intrinsics& k,
                                 const RigidTransform& pose,
                                 std::vector<int64_t>* winners) {
  const Eigen::Matrix3d& r = pose.rotation();
  const Eigen::Vector3d& t = pose.translation();
  DepthMap out(k.width, k.height, 0.0);
  std::vector<int64_t> win(out.size(), -1);
  for (int y = 0; y < prev.height(); ++y) {
    for (int x = 0; x < prev.width(); ++x) {
      const double d = prev(x, y);
      if (!(d > 0.0)) continue;
      const double px = d * ((x - k.cx) / k.fx);
      const double py = d * ((y - k.cy) / k.fy);
      const double pz = d;
      const double qx = r(0, 0) * px + r(0, 1) * py + r(0, 2) * pz + t.x();
      const double qy = r(1, 0) * px + r(1, 1) * py + r(1, 2) * pz + t.y();
      const double qz = r(2, 0) * px + r(2, 1) * py + r(2, 2) * pz + t.z();
      if (!(qz > kMinDepth)) continue;
      const double u = std::floor(k.fx * qx / qz + k.cx + 0.5);
      const double v = std::floor(k.fy * qy / qz + k.cy + 0.5);
      if (u < 0 || v < 0 || u >= k.width || v >= k.height) continue;
      const size_t j = out.Index(static_cast<int>(u), static_cast<int>(v));
      if (win[j] < 0 || qz < out[j]) {
        out[j] = qz;
        win[j] = static_cast<int64_t>(prev.Index(x, y));
      }
    }
  }
  if (winners != nullptr) *winners = std::move(win);
  return out;
}

std::vector<std::vector<double>> BruteForceBlockDiff(const DepthMap& a,
                                                     const DepthMap& b,
                                                     const DepthMap& gt,
                                                     int block) {
  const int bw = (gt.width() + block - 1) / block;
  const int bh = (gt.height() + block - 1) / block;
  std::vector<std::vector<double>> sum_a(bh, std::vector<double>(bw, 0.0));
  auto sum_b = sum_a;
  std::vector<std::vector<int>> count(bh, std::vector<int>(bw, 0));
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (gt(x, y) <= 0.0) continue;
      sum_a[y / block][x / block] += std::abs(a(x, y) - gt(x, y));
      sum_b[y / block][x / block] += std::abs(b(x, y) - gt(x, y));
      ++count[y / block][x / block];
    }
  }
  std::vector<std::vector<double>> out(
      bh, std::vector<double>(bw, std::numeric_limits<double>::quiet_NaN()));
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      if (count[by][bx] == 0) continue;
      out[by][bx] = 1000.0 * (sum_a[by][bx] - sum_b[by][bx]) / count[by][bx];
    }
  }
  return out;
}

bool WarpFiniteDifference(const DepthMap& prev, const Intrinsics& k,
                          const RigidTransform& pose, size_t source,
                          size_t target, double step, double* derivative) {
  DepthMap plus = prev;
  DepthMap minus = prev;
  plus[source] += step;
  minus[source] -= step;
  std::vector<int64_t> win_plus;
  std::vector<int64_t> win_minus;
  const DepthMap out_plus = ReferenceWarpSequential(plus, k, pose, &win_plus);
  const DepthMap out_minus = ReferenceWarpSequential(minus, k, pose, &win_minus);
  const auto s = static_cast<int64_t>(source);
  if (win_plus[target] != s || win_minus[target] != s) return false;
  *derivative = (out_plus[target] - out_minus[target]) / (2.0 * step);
  return true;
}

}  // namespace tdc::testing
