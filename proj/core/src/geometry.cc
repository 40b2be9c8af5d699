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

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "tdc/errors.h"

namespace tdc {

size_t DepthMap::ValidCount() const {
  return static_cast<size_t>(
      std::count_if(values().begin(), values().end(),
                    [](double d) { return d > 0.0; }));
}

double DepthMap::Density() const {
  if (empty()) return 0.0;
  return static_cast<double>(ValidCount()) / static_cast<double>(size());
}

void DepthMap::CheckInvariants() const {
  for (size_t i = 0; i < size(); ++i) {
    const double d = (*this)[i];
    if (!std::isfinite(d) || d < 0.0) {
      throw DomainError("depth map entry " + std::to_string(i) +
                        " is negative or not finite");
    }
  }
}

void Intrinsics::Validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw DomainError("intrinsics: focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw DomainError("intrinsics: image size must be positive");
  }
  if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    throw DomainError("intrinsics: principal point outside the image");
  }
}

Eigen::Matrix3d Intrinsics::Matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

Intrinsics Intrinsics::Cropped(int left, int top, int new_width,
                               int new_height) const {
  Intrinsics out = *this;
  out.cx -= left;
  out.cy -= top;
  out.width = new_width;
  out.height = new_height;
  return out;
}

Eigen::Matrix3d NearestRotation(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0
                ? -1.0
                : 1.0;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

RigidTransform RigidTransform::FromRotationTranslation(
    const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw DomainError("rigid transform: non-finite entries");
  }
  const double ortho =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  const double det = rotation.determinant();
  if (ortho > kOrthonormalTolerance ||
      std::abs(det - 1.0) > kOrthonormalTolerance) {
    throw DomainError("rigid transform: rotation is not orthonormal (" +
                      std::to_string(ortho) + ", det " + std::to_string(det) +
                      ")");
  }
  return RigidTransform(rotation, translation);
}

RigidTransform RigidTransform::FromApproximateRotation(
    const Eigen::Matrix3d& approx_rotation,
    const Eigen::Vector3d& translation) {
  return FromRotationTranslation(NearestRotation(approx_rotation), translation);
}

RigidTransform RigidTransform::FromMatrix(const Eigen::Matrix4d& m) {
  const Eigen::RowVector4d last = m.row(3);
  if ((last - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() >
      kOrthonormalTolerance) {
    throw DomainError("rigid transform: last row must be (0, 0, 0, 1)");
  }
  return FromRotationTranslation(m.topLeftCorner<3, 3>(),
                                 m.topRightCorner<3, 1>());
}

RigidTransform RigidTransform::Translation(const Eigen::Vector3d& t) {
  return FromRotationTranslation(Eigen::Matrix3d::Identity(), t);
}

RigidTransform RigidTransform::Rotation(const Eigen::Matrix3d& r) {
  return FromRotationTranslation(r, Eigen::Vector3d::Zero());
}

Eigen::Matrix4d RigidTransform::Matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

RigidTransform RigidTransform::Inverse() const {
  const Eigen::Matrix3d rt = rotation_.transpose();
  return RigidTransform(rt, -(rt * translation_));
}

RigidTransform operator*(const RigidTransform& a, const RigidTransform& b) {
  return RigidTransform(a.rotation_ * b.rotation_,
                        a.rotation_ * b.translation_ + a.translation_);
}

double RigidTransform::MaxAbsDifference(const RigidTransform& other) const {
  return (Matrix() - other.Matrix()).cwiseAbs().maxCoeff();
}

void RequireMatches(const DepthMap& depth, const Intrinsics& k,
                    const char* what) {
  if (!depth.SameShape(k.width, k.height)) {
    throw DimensionError(std::string(what) + ": depth map is " +
                         std::to_string(depth.width()) + "x" +
                         std::to_string(depth.height()) +
                         " but intrinsics describe " + std::to_string(k.width) +
                         "x" + std::to_string(k.height));
  }
}

PointCloud Unproject(const DepthMap& depth, const Intrinsics& k) {
  RequireMatches(depth, k, "unproject");
  PointCloud cloud;
  cloud.reserve(depth.ValidCount());
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      const double d = depth(x, y);
      if (d <= 0.0) continue;
      cloud.emplace_back(d * ((x - k.cx) / k.fx), d * ((y - k.cy) / k.fy), d);
    }
  }
  return cloud;
}

Projection Project(std::span<const Eigen::Vector3d> cloud,
                   const Intrinsics& k) {
  Projection out;
  out.points.reserve(cloud.size());
  for (const Eigen::Vector3d& p : cloud) {
    if (!(p.z() > kMinDepth)) {
      ++out.dropped;
      continue;
    }
    out.points.push_back(
        {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy, p.z()});
  }
  return out;
}

}  // namespace tdc
