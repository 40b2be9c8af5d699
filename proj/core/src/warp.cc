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

#include "tdc/warp.h"

#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "tdc/errors.h"
#include "tdc/parallel.h"

namespace tdc {
namespace {

// For non-negative doubles the IEEE bit pattern orders like the value.
uint64_t DepthKey(double d) { return std::bit_cast<uint64_t>(d); }

template <typename T>
void AtomicMin(T& slot, T value) {
  std::atomic_ref<T> ref(slot);
  T current = ref.load(std::memory_order_relaxed);
  while (value < current &&
         !ref.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

std::vector<int64_t> ResolveMinDepthScatter(std::span<const int64_t> target,
                                            std::span<const double> depth,
                                            size_t target_count) {
  if (target.size() != depth.size()) {
    throw DimensionError("scatter: target and depth lists differ in length");
  }
  const size_t n = target.size();
  constexpr uint64_t kEmptyKey = std::numeric_limits<uint64_t>::max();
  constexpr int64_t kEmptyWinner = std::numeric_limits<int64_t>::max();

  std::vector<uint64_t> best(target_count, kEmptyKey);
  ParallelFor(n, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      if (target[i] < 0) continue;
      AtomicMin(best[static_cast<size_t>(target[i])], DepthKey(depth[i]));
    }
  });

  std::vector<int64_t> winner(target_count, kEmptyWinner);
  ParallelFor(n, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      if (target[i] < 0) continue;
      const auto t = static_cast<size_t>(target[i]);
      if (DepthKey(depth[i]) == best[t]) {
        AtomicMin(winner[t], static_cast<int64_t>(i));
      }
    }
  });

  for (int64_t& w : winner) {
    if (w == kEmptyWinner) w = WarpCorrespondence::kNoSource;
  }
  return winner;
}

WarpResult WarpDepth(const DepthMap& prev, const Intrinsics& k,
                     const RigidTransform& pose) {
  RequireMatches(prev, k, "warp_depth");
  const int w = k.width;
  const int h = k.height;
  const size_t n = prev.size();
  const Eigen::Matrix3d& r = pose.rotation();
  const Eigen::Vector3d& t = pose.translation();

  WarpResult result;
  WarpCorrespondence& corr = result.correspondence;
  corr.width = w;
  corr.height = h;
  corr.target_u.assign(n, std::numeric_limits<double>::quiet_NaN());
  corr.target_v.assign(n, std::numeric_limits<double>::quiet_NaN());
  corr.target_index.assign(n, WarpCorrespondence::kNoSource);
  corr.warped_depth.assign(n, 0.0);
  corr.depth_jacobian.assign(n, 0.0);

  ParallelFor(n, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const double d = prev[i];
      if (!(d > 0.0)) continue;
      const int x = static_cast<int>(i % static_cast<size_t>(w));
      const int y = static_cast<int>(i / static_cast<size_t>(w));
      const double ray_x = (x - k.cx) / k.fx;
      const double ray_y = (y - k.cy) / k.fy;
      const double px = d * ray_x;
      const double py = d * ray_y;
      const double pz = d;
      const double qx = r(0, 0) * px + r(0, 1) * py + r(0, 2) * pz + t.x();
      const double qy = r(1, 0) * px + r(1, 1) * py + r(1, 2) * pz + t.y();
      const double qz = r(2, 0) * px + r(2, 1) * py + r(2, 2) * pz + t.z();
      if (!(qz > kMinDepth)) continue;
      const double u = k.fx * qx / qz + k.cx;
      const double v = k.fy * qy / qz + k.cy;
      corr.target_u[i] = u;
      corr.target_v[i] = v;
      int tx = 0;
      int ty = 0;
      if (!RasterizeNearest(u, v, w, h, &tx, &ty)) continue;
      corr.target_index[i] = static_cast<int64_t>(ty) * w + tx;
      corr.warped_depth[i] = qz;
      corr.depth_jacobian[i] = r(2, 0) * ray_x + r(2, 1) * ray_y + r(2, 2);
    }
  });

  corr.winner = ResolveMinDepthScatter(corr.target_index, corr.warped_depth, n);

  result.depth = DepthMap(w, h, 0.0);
  for (size_t j = 0; j < n; ++j) {
    const int64_t src = corr.winner[j];
    if (src != WarpCorrespondence::kNoSource) {
      result.depth[j] = corr.warped_depth[static_cast<size_t>(src)];
    }
  }
  return result;
}

GradientMap WarpBackward(const GradientMap& grad_out,
                         const WarpCorrespondence& corr) {
  if (!grad_out.SameShape(corr.width, corr.height) ||
      corr.winner.size() != grad_out.size()) {
    throw DimensionError("warp_backward: gradient is " +
                         std::to_string(grad_out.width()) + "x" +
                         std::to_string(grad_out.height()) +
                         " but the warp produced " + std::to_string(corr.width) +
                         "x" + std::to_string(corr.height));
  }
  GradientMap grad_in(corr.width, corr.height, 0.0);
  // Each source pixel wins at most one target, so the writes are disjoint.
  for (size_t j = 0; j < corr.winner.size(); ++j) {
    const int64_t src = corr.winner[j];
    if (src == WarpCorrespondence::kNoSource) continue;
    const auto s = static_cast<size_t>(src);
    grad_in[s] = grad_out[j] * corr.depth_jacobian[s];
  }
  return grad_in;
}

Grid<double> GatherAlongWarp(const Grid<double>& source,
                             const WarpCorrespondence& corr, double fill) {
  if (!source.SameShape(corr.width, corr.height)) {
    throw DimensionError("gather_along_warp: source shape mismatch");
  }
  Grid<double> out(corr.width, corr.height, fill);
  for (size_t j = 0; j < corr.winner.size(); ++j) {
    const int64_t src = corr.winner[j];
    if (src != WarpCorrespondence::kNoSource) {
      out[j] = source[static_cast<size_t>(src)];
    }
  }
  return out;
}

}  // namespace tdc
