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

#include "tdc/geometry.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tdc/errors.h"
#include "test_support.h"

namespace tdc {
namespace {

Intrinsics Kitti() { return {700.0, 700.0, 600.0, 180.0, 1216, 352}; }

TEST(IntrinsicsTest, ValidateRejectsBadValues) {
  EXPECT_NO_THROW(Kitti().Validate());
  Intrinsics k = Kitti();
  k.fx = 0.0;
  EXPECT_THROW(k.Validate(), DomainError);
  k = Kitti();
  k.cx = k.width;
  EXPECT_THROW(k.Validate(), DomainError);
  k = Kitti();
  k.cy = -0.5;
  EXPECT_THROW(k.Validate(), DomainError);
}

TEST(IntrinsicsTest, CroppedShiftsPrincipalPoint) {
  const Intrinsics c = Kitti().Cropped(13, 23, 100, 50);
  EXPECT_DOUBLE_EQ(c.cx, 587.0);
  EXPECT_DOUBLE_EQ(c.cy, 157.0);
  EXPECT_EQ(c.width, 100);
  EXPECT_EQ(c.height, 50);
  EXPECT_DOUBLE_EQ(c.fx, 700.0);
}

TEST(RigidTransformTest, RejectsNonRotation) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = 1.01;
  EXPECT_THROW(RigidTransform::FromRotationTranslation(m, Eigen::Vector3d::Zero()),
               DomainError);
  // Reflection: orthonormal but det = -1.
  m = Eigen::Matrix3d::Identity();
  m(2, 2) = -1.0;
  EXPECT_THROW(RigidTransform::FromRotationTranslation(m, Eigen::Vector3d::Zero()),
               DomainError);
}

TEST(RigidTransformTest, ApproximateRotationIsProjected) {
  Eigen::Matrix3d m =
      Eigen::AngleAxisd(0.3, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  m(0, 1) += 3e-7;
  m(2, 0) -= 2e-7;
  const RigidTransform t =
      RigidTransform::FromApproximateRotation(m, Eigen::Vector3d(1, 2, 3));
  const Eigen::Matrix3d r = t.rotation();
  EXPECT_LT((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  EXPECT_LT((r - m).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(RigidTransformTest, FromMatrixChecksLastRow) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  EXPECT_NO_THROW(RigidTransform::FromMatrix(m));
  m(3, 0) = 0.1;
  EXPECT_THROW(RigidTransform::FromMatrix(m), DomainError);
}

TEST(RigidTransformTest, CompositionAndInverse) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const RigidTransform a = testing::RandomSmallPose(rng, 1.0, 5.0);
    const RigidTransform b = testing::RandomSmallPose(rng, 1.0, 5.0);
    const Eigen::Vector3d p(1.5, -2.0, 7.0);
    EXPECT_LT(((a * b) * p - a * (b * p)).norm(), 1e-12);
    EXPECT_LT((a * a.Inverse()).MaxAbsDifference(RigidTransform::Identity()),
              1e-12);
    EXPECT_LT(((a * b).Matrix() - a.Matrix() * b.Matrix()).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(NearestRotationTest, FixesDeterminantSign) {
  const Eigen::Matrix3d r = NearestRotation(-Eigen::Matrix3d::Identity());
  EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
}

TEST(UnprojectTest, HandComputedPoints) {
  const Intrinsics k = Kitti();
  DepthMap d(k.width, k.height, 0.0);
  d(600, 180) = 5.0;
  d(950, 180) = 2.0;
  const PointCloud cloud = Unproject(d, k);
  ASSERT_EQ(cloud.size(), 2u);
  EXPECT_EQ(cloud[0], Eigen::Vector3d(0, 0, 5));
  EXPECT_NEAR((cloud[1] - Eigen::Vector3d(1, 0, 2)).norm(), 0.0, 1e-12);
}

TEST(UnprojectTest, EmptyAndMismatch) {
  const Intrinsics k = testing::SmallIntrinsics();
  EXPECT_TRUE(Unproject(DepthMap(k.width, k.height, 0.0), k).empty());
  EXPECT_THROW(Unproject(DepthMap(k.width + 1, k.height, 1.0), k), DimensionError);
}

TEST(ProjectTest, HandComputedAndDropped) {
  const Intrinsics k = Kitti();
  const PointCloud cloud = {{0, 0, 5}, {2, 0, 2}, {1, 1, 0}, {0, 0, -3}};
  const Projection p = Project(cloud, k);
  ASSERT_EQ(p.points.size(), 2u);
  EXPECT_EQ(p.dropped, 2u);
  EXPECT_DOUBLE_EQ(p.points[0].u, 600.0);
  EXPECT_DOUBLE_EQ(p.points[0].v, 180.0);
  EXPECT_DOUBLE_EQ(p.points[0].depth, 5.0);
  EXPECT_DOUBLE_EQ(p.points[1].u, 1300.0);
  EXPECT_DOUBLE_EQ(p.points[1].depth, 2.0);
}

TEST(ProjectTest, RoundTripWithUnproject) {
  std::mt19937_64 rng(11);
  const Intrinsics k = testing::SmallIntrinsics(80, 60);
  const DepthMap d = testing::RandomSmoothDepth(rng, k.width, k.height, 0.3);
  const Projection p = Project(Unproject(d, k), k);
  size_t n = 0;
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      if (!d.IsValid(x, y)) continue;
      const ProjectedPoint& q = p.points[n++];
      EXPECT_NEAR(q.u, x, 1e-9);
      EXPECT_NEAR(q.v, y, 1e-9);
      EXPECT_NEAR(q.depth, d(x, y), 1e-9);
    }
  }
  EXPECT_EQ(n, p.points.size());
}

TEST(RasterizeTest, RoundsHalfUp) {
  int x = 0;
  int y = 0;
  ASSERT_TRUE(RasterizeNearest(2.5, 3.49, 10, 10, &x, &y));
  EXPECT_EQ(x, 3);
  EXPECT_EQ(y, 3);
  ASSERT_TRUE(RasterizeNearest(-0.5, 0.0, 10, 10, &x, &y));
  EXPECT_EQ(x, 0);
  EXPECT_FALSE(RasterizeNearest(-0.51, 0.0, 10, 10, &x, &y));
  EXPECT_FALSE(RasterizeNearest(9.5, 0.0, 10, 10, &x, &y));
  EXPECT_FALSE(RasterizeNearest(std::nan(""), 0.0, 10, 10, &x, &y));
}

TEST(DepthMapTest, InvariantsAndDensity) {
  DepthMap d(4, 2, 0.0);
  d(1, 1) = 3.0;
  d(2, 0) = 1.0;
  EXPECT_EQ(d.ValidCount(), 2u);
  EXPECT_DOUBLE_EQ(d.Density(), 0.25);
  EXPECT_NO_THROW(d.CheckInvariants());
  d(0, 0) = -1.0;
  EXPECT_THROW(d.CheckInvariants(), DomainError);
  d(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(d.CheckInvariants(), DomainError);
}

TEST(GridTest, RejectsWrongValueCount) {
  EXPECT_THROW(Grid<double>(2, 2, std::vector<double>(3)), DimensionError);
  EXPECT_THROW(Grid<double>(-1, 2), DimensionError);
}

}  // namespace
}  // namespace tdc
