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

#include <cmath>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "tdc/errors.h"
#include "test_support.h"

namespace tdc {
namespace {

using testing::RandomSmallPose;
using testing::RandomSmoothDepth;
using testing::SmallIntrinsics;

TEST(WarpDepthTest, IdentityIsExact) {
  std::mt19937_64 rng(1);
  const Intrinsics k = SmallIntrinsics();
  for (int i = 0; i < 5; ++i) {
    const DepthMap d = RandomSmoothDepth(rng, k.width, k.height, 0.2);
    const WarpResult w = WarpDepth(d, k, RigidTransform::Identity());
    EXPECT_EQ(w.depth, d);
  }
}

TEST(WarpDepthTest, AdvanceAlongOpticalAxis) {
  const Intrinsics k = SmallIntrinsics();
  DepthMap d(k.width, k.height, 0.0);
  d(32, 24) = 10.0;
  const WarpResult w =
      WarpDepth(d, k, RigidTransform::Translation(Eigen::Vector3d(0, 0, -2)));
  EXPECT_DOUBLE_EQ(w.depth(32, 24), 8.0);
  EXPECT_EQ(w.depth.ValidCount(), 1u);
  EXPECT_EQ(w.correspondence.winner[w.depth.Index(32, 24)],
            static_cast<int64_t>(d.Index(32, 24)));
}

// Source (32, 24) at 5 m and (26, 24) at 3 m both land on (41, 24) after a
// sideways shift of 0.78125 m with fx = 57.6.
struct Conflict {
  Intrinsics k = SmallIntrinsics();
  DepthMap d{k.width, k.height, 0.0};
  RigidTransform pose =
      RigidTransform::Translation(Eigen::Vector3d(0.78125, 0.0, 0.0));
  Conflict() {
    d(32, 24) = 5.0;
    d(26, 24) = 3.0;
  }
};

TEST(WarpDepthTest, ConflictKeepsMinimumDepth) {
  const Conflict c;
  const WarpResult w = WarpDepth(c.d, c.k, c.pose);
  EXPECT_EQ(w.depth.ValidCount(), 1u);
  EXPECT_DOUBLE_EQ(w.depth(41, 24), 3.0);
  EXPECT_EQ(w.correspondence.winner[w.depth.Index(41, 24)],
            static_cast<int64_t>(c.d.Index(26, 24)));
}

TEST(WarpDepthTest, DropsBehindCameraAndOutOfBounds) {
  const Intrinsics k = SmallIntrinsics();
  DepthMap d(k.width, k.height, 0.0);
  d(32, 24) = 1.0;
  d(60, 24) = 1.0;
  // Shifting 2 m forward puts the first sample behind the camera.
  WarpResult w = WarpDepth(d, k, RigidTransform::Translation({0, 0, -2}));
  EXPECT_EQ(w.depth.ValidCount(), 0u);
  EXPECT_TRUE(std::isnan(w.correspondence.target_u[d.Index(32, 24)]));
  // A sideways shift pushes the edge sample off the image.
  w = WarpDepth(d, k, RigidTransform::Translation({0.2, 0, 0}));
  EXPECT_EQ(w.correspondence.target_index[d.Index(60, 24)],
            WarpCorrespondence::kNoSource);
  EXPECT_EQ(w.depth.ValidCount(), 1u);
}

TEST(WarpDepthTest, CorrespondenceInvariants) {
  std::mt19937_64 rng(3);
  const Intrinsics k = SmallIntrinsics();
  for (int i = 0; i < 5; ++i) {
    const DepthMap d = RandomSmoothDepth(rng, k.width, k.height, 0.1);
    const WarpResult w = WarpDepth(d, k, RandomSmallPose(rng, 0.1, 1.0));
    const WarpCorrespondence& c = w.correspondence;
    for (size_t j = 0; j < w.depth.size(); ++j) {
      const bool has = c.winner[j] != WarpCorrespondence::kNoSource;
      EXPECT_EQ(has, w.depth[j] > 0.0);
      if (has) {
        const auto s = static_cast<size_t>(c.winner[j]);
        EXPECT_EQ(c.warped_depth[s], w.depth[j]);
        EXPECT_EQ(c.target_index[s], static_cast<int64_t>(j));
      }
    }
  }
}

TEST(WarpDepthTest, MatchesSequentialReference) {
  std::mt19937_64 rng(5);
  const Intrinsics k = SmallIntrinsics(160, 120);
  for (int i = 0; i < 10; ++i) {
    const DepthMap d = RandomSmoothDepth(rng, k.width, k.height, 0.05);
    const RigidTransform p = RandomSmallPose(rng, 0.15, 2.0);
    std::vector<int64_t> winners;
    const DepthMap ref = testing::ReferenceWarpSequential(d, k, p, &winners);
    const WarpResult w = WarpDepth(d, k, p);
    EXPECT_EQ(w.depth, ref);
    EXPECT_EQ(w.correspondence.winner, winners);
  }
}

TEST(WarpDepthTest, CompositionWithinDiscretization) {
  std::mt19937_64 rng(9);
  const Intrinsics k = SmallIntrinsics(160, 120);
  for (int i = 0; i < 5; ++i) {
    const DepthMap d = RandomSmoothDepth(rng, k.width, k.height);
    const RigidTransform p1 = RandomSmallPose(rng, 0.05, 0.5);
    // A roll about the optical axis plus a shift keeps depth independent of
    // the sub-pixel position, so the chained depth is exact.
    const RigidTransform p2 = RigidTransform::FromRotationTranslation(
        Eigen::AngleAxisd(0.03, Eigen::Vector3d::UnitZ()).toRotationMatrix(),
        Eigen::Vector3d(0.1, -0.05, 0.3));
    const WarpResult direct = WarpDepth(d, k, p2 * p1);
    const WarpResult first = WarpDepth(d, k, p1);
    const WarpResult second = WarpDepth(first.depth, k, p2);
    int compared = 0;
    for (size_t s = 0; s < d.size(); ++s) {
      const int64_t t_direct = direct.correspondence.target_index[s];
      const int64_t t1 = first.correspondence.target_index[s];
      if (t_direct < 0 || t1 < 0) continue;
      if (direct.correspondence.winner[static_cast<size_t>(t_direct)] !=
              static_cast<int64_t>(s) ||
          first.correspondence.winner[static_cast<size_t>(t1)] !=
              static_cast<int64_t>(s)) {
        continue;
      }
      const int64_t t2 = second.correspondence.target_index[static_cast<size_t>(t1)];
      if (t2 < 0 || second.correspondence.winner[static_cast<size_t>(t2)] != t1) {
        continue;
      }
      const int dx = static_cast<int>(t2 % k.width - t_direct % k.width);
      const int dy = static_cast<int>(t2 / k.width - t_direct / k.width);
      EXPECT_LE(std::abs(dx), 2);
      EXPECT_LE(std::abs(dy), 2);
      EXPECT_NEAR(second.depth[static_cast<size_t>(t2)],
                  direct.correspondence.warped_depth[s], 1e-6);
      ++compared;
    }
    EXPECT_GT(compared, static_cast<int>(d.size() / 2));
  }
}

TEST(WarpDepthTest, DimensionMismatchThrows) {
  const Intrinsics k = SmallIntrinsics();
  EXPECT_THROW(WarpDepth(DepthMap(k.width, k.height + 1, 1.0), k,
                         RigidTransform::Identity()),
               DimensionError);
}

TEST(WarpBackwardTest, IdentityPassesOnes) {
  std::mt19937_64 rng(13);
  const Intrinsics k = SmallIntrinsics();
  const DepthMap d = RandomSmoothDepth(rng, k.width, k.height, 0.3);
  const WarpResult w = WarpDepth(d, k, RigidTransform::Identity());
  const GradientMap g =
      WarpBackward(GradientMap(k.width, k.height, 1.0), w.correspondence);
  for (size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(g[i], d[i] > 0.0 ? 1.0 : 0.0);
  }
}

TEST(WarpBackwardTest, LoserGetsZero) {
  const Conflict c;
  const WarpResult w = WarpDepth(c.d, c.k, c.pose);
  const GradientMap g =
      WarpBackward(GradientMap(c.k.width, c.k.height, 1.0), w.correspondence);
  EXPECT_EQ(g(32, 24), 0.0);
  EXPECT_EQ(g(26, 24), 1.0);
}

TEST(WarpBackwardTest, ZTranslationMatchesFiniteDifference) {
  const Intrinsics k = SmallIntrinsics();
  DepthMap d(k.width, k.height, 0.0);
  d(32, 24) = 10.0;
  d(10, 5) = 7.0;
  const RigidTransform p = RigidTransform::Translation({0, 0, -2});
  const WarpResult w = WarpDepth(d, k, p);
  GradientMap up(k.width, k.height, 0.0);
  const size_t target = w.depth.Index(32, 24);
  up[target] = 1.0;
  const GradientMap g = WarpBackward(up, w.correspondence);
  double fd = 0.0;
  ASSERT_TRUE(testing::WarpFiniteDifference(d, k, p, d.Index(32, 24), target,
                                            1e-4, &fd));
  EXPECT_NEAR(g(32, 24), fd, 1e-4 * std::abs(fd));
}

TEST(WarpBackwardTest, RandomPosesMatchFiniteDifferences) {
  std::mt19937_64 rng(17);
  const Intrinsics k = SmallIntrinsics();
  const DepthMap d = RandomSmoothDepth(rng, k.width, k.height, 0.1);
  const RigidTransform p = RandomSmallPose(rng, 0.1, 0.5);
  const WarpResult w = WarpDepth(d, k, p);
  const GradientMap g =
      WarpBackward(GradientMap(k.width, k.height, 1.0), w.correspondence);
  int checked = 0;
  for (size_t t = 0; t < w.depth.size(); t += 7) {
    const int64_t s = w.correspondence.winner[t];
    if (s < 0) continue;
    double fd = 0.0;
    if (!testing::WarpFiniteDifference(d, k, p, static_cast<size_t>(s), t, 1e-5,
                                       &fd)) {
      continue;
    }
    EXPECT_NEAR(g[static_cast<size_t>(s)], fd, 1e-4 * std::abs(fd));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(WarpBackwardTest, ShapeMismatchThrows) {
  const Intrinsics k = SmallIntrinsics();
  const WarpResult w =
      WarpDepth(DepthMap(k.width, k.height, 1.0), k, RigidTransform::Identity());
  EXPECT_THROW(WarpBackward(GradientMap(3, 3, 1.0), w.correspondence),
               DimensionError);
}

TEST(GatherAlongWarpTest, FollowsWinners) {
  const Conflict c;
  const WarpResult w = WarpDepth(c.d, c.k, c.pose);
  Grid<double> tag(c.k.width, c.k.height, 0.0);
  tag(26, 24) = 0.7;
  tag(32, 24) = 0.2;
  const Grid<double> out = GatherAlongWarp(tag, w.correspondence, -1.0);
  EXPECT_EQ(out(41, 24), 0.7);
  EXPECT_EQ(out(0, 0), -1.0);
}

TEST(ResolveMinDepthScatterTest, TiesGoToLowestIndex) {
  const std::vector<int64_t> target = {1, 1, 0, 1, -1, 2};
  const std::vector<double> depth = {4.0, 2.0, 9.0, 2.0, 0.5, 3.0};
  const std::vector<int64_t> w = ResolveMinDepthScatter(target, depth, 4);
  EXPECT_EQ(w, (std::vector<int64_t>{2, 1, 5, -1}));
}

TEST(ResolveMinDepthScatterTest, LargeInputIsOrderIndependent) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int64_t> slot(-1, 99);
  std::uniform_int_distribution<int> level(1, 5);
  const size_t n = 200000;
  std::vector<int64_t> target(n);
  std::vector<double> depth(n);
  for (size_t i = 0; i < n; ++i) {
    target[i] = slot(rng);
    depth[i] = level(rng);
  }
  std::vector<int64_t> expected(100, -1);
  for (size_t i = 0; i < n; ++i) {
    if (target[i] < 0) continue;
    int64_t& e = expected[static_cast<size_t>(target[i])];
    if (e < 0 || depth[i] < depth[static_cast<size_t>(e)]) {
      e = static_cast<int64_t>(i);
    }
  }
  EXPECT_EQ(ResolveMinDepthScatter(target, depth, 100), expected);
}

}  // namespace
}  // namespace tdc
