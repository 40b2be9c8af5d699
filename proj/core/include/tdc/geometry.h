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

#ifndef TDC_GEOMETRY_H_
#define TDC_GEOMETRY_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "tdc/grid.h"

namespace tdc {

// Points at or closer than this camera-z (meters) are dropped by every
// projection.
inline constexpr double kMinDepth = 1e-3;

// Pinhole camera model. No lens distortion.
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  // Throws DomainError unless fx, fy > 0 and the principal point lies
  // inside the image.
  void Validate() const;
  Eigen::Matrix3d Matrix() const;
  // Intrinsics after cutting `left` columns and `top` rows off the image.
  Intrinsics Cropped(int left, int top, int new_width, int new_height) const;

  friend bool operator==(const Intrinsics&, const Intrinsics&) = default;
};

// Rigid motion X' = rotation * X + translation.
class RigidTransform {
 public:
  // Tolerance on R^T R = I and det R = 1 enforced by the checked factories.
  static constexpr double kOrthonormalTolerance = 1e-9;

  RigidTransform() = default;

  static RigidTransform Identity() { return {}; }
  // Throws DomainError if `rotation` is not a proper rotation.
  static RigidTransform FromRotationTranslation(
      const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);
  // Projects `approx_rotation` onto SO(3) first. Used for calibration files
  // whose matrices carry only 7 significant digits.
  static RigidTransform FromApproximateRotation(
      const Eigen::Matrix3d& approx_rotation,
      const Eigen::Vector3d& translation);
  static RigidTransform FromMatrix(const Eigen::Matrix4d& m);
  static RigidTransform Translation(const Eigen::Vector3d& t);
  static RigidTransform Rotation(const Eigen::Matrix3d& r);

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  Eigen::Matrix4d Matrix() const;

  RigidTransform Inverse() const;
  // (a * b)(X) = a(b(X)).
  friend RigidTransform operator*(const RigidTransform& a,
                                  const RigidTransform& b);
  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation_ * p + translation_;
  }

  // Largest absolute entry of Matrix() - other.Matrix().
  double MaxAbsDifference(const RigidTransform& other) const;

 private:
  RigidTransform(const Eigen::Matrix3d& r, const Eigen::Vector3d& t)
      : rotation_(r), translation_(t) {}

  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
};

// Nearest proper rotation in the Frobenius sense.
Eigen::Matrix3d NearestRotation(const Eigen::Matrix3d& m);

using PointCloud = std::vector<Eigen::Vector3d>;

struct ProjectedPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

struct Projection {
  std::vector<ProjectedPoint> points;
  // Input points with z <= kMinDepth.
  size_t dropped = 0;
};

// Back-projects every valid pixel; row-major order over valid pixels.
PointCloud Unproject(const DepthMap& depth, const Intrinsics& k);

// Continuous pixel coordinates; nothing is rasterized or bounds-checked.
Projection Project(std::span<const Eigen::Vector3d> cloud, const Intrinsics& k);

// Nearest-pixel rasterization, floor(u + 0.5). Returns false when the
// rounded pixel falls outside a width x height image.
inline bool RasterizeNearest(double u, double v, int width, int height,
                             int* x, int* y) {
  const double fu = std::floor(u + 0.5);
  const double fv = std::floor(v + 0.5);
  if (!(fu >= 0.0 && fv >= 0.0 && fu < width && fv < height)) return false;
  *x = static_cast<int>(fu);
  *y = static_cast<int>(fv);
  return true;
}

// Throws DimensionError unless depth is k.width x k.height.
void RequireMatches(const DepthMap& depth, const Intrinsics& k,
                    const char* what);

}  // namespace tdc

#endif  // TDC_GEOMETRY_H_
