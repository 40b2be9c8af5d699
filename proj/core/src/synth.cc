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

#include "tdc/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "tdc/errors.h"
#include "tdc/lidar.h"
#include "tdc/oxts.h"
#include "tdc/parallel.h"
#include "tdc/png_io.h"

namespace tdc::synth {
namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kSkyIntensity = 0.85;
constexpr double kAnchorLatitude = 49.0;
constexpr double kAnchorLongitude = 8.4;
constexpr double kAnchorAltitude = 110.0;

// Portable uniform/normal draws; std distributions differ across
// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  int UniformInt(int lo, int hi) {
    return lo + static_cast<int>(Uniform() * (hi - lo + 1));
  }
  double Normal() {
    const double u1 = std::max(Uniform(), 1e-300);
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  double albedo = 0.0;
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
};

void IntersectPlane(const Plane& p, double albedo, const Eigen::Vector3d& o,
                    const Eigen::Vector3d& d, double t_min, Hit* hit) {
  const double denom = p.normal.dot(d);
  if (std::abs(denom) < 1e-15) return;
  const double t = p.normal.dot(p.point - o) / denom;
  if (t > t_min && t < hit->t) {
    hit->t = t;
    hit->albedo = albedo;
    hit->normal = p.normal.normalized();
  }
}

void IntersectSphere(const Sphere& s, double albedo, const Eigen::Vector3d& o,
                     const Eigen::Vector3d& d, double t_min, Hit* hit) {
  const Eigen::Vector3d oc = o - s.center;
  const double a = d.squaredNorm();
  const double b = 2.0 * oc.dot(d);
  const double c = oc.squaredNorm() - s.radius * s.radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double root = std::sqrt(disc);
  for (const double t : {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)}) {
    if (t > t_min) {
      if (t < hit->t) {
        hit->t = t;
        hit->albedo = albedo;
        hit->normal = (o + t * d - s.center) / s.radius;
      }
      return;
    }
  }
}

void IntersectBox(const Box& box, double albedo, const Eigen::Vector3d& o,
                  const Eigen::Vector3d& d, double t_min, Hit* hit) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = 0;
  int far_axis = 0;
  for (int a = 0; a < 3; ++a) {
    if (std::abs(d[a]) < 1e-15) {
      if (o[a] < box.min[a] || o[a] > box.max[a]) return;
      continue;
    }
    double t0 = (box.min[a] - o[a]) / d[a];
    double t1 = (box.max[a] - o[a]) / d[a];
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_near) {
      t_near = t0;
      near_axis = a;
    }
    if (t1 < t_far) {
      t_far = t1;
      far_axis = a;
    }
  }
  if (t_near > t_far) return;
  const double t = t_near > t_min ? t_near : t_far;
  const int axis = t_near > t_min ? near_axis : far_axis;
  if (t > t_min && t < hit->t) {
    hit->t = t;
    hit->albedo = albedo;
    hit->normal = Eigen::Vector3d::Zero();
    hit->normal[axis] = d[axis] > 0.0 ? -1.0 : 1.0;
  }
}

Hit CastRay(const SceneSpec& scene, const Eigen::Vector3d& o,
            const Eigen::Vector3d& d, double t_min, int frame) {
  Hit hit;
  for (const Primitive& p : scene.primitives) {
    std::visit(
        [&](const auto& shape) {
          using T = std::decay_t<decltype(shape)>;
          if constexpr (std::is_same_v<T, Plane>) {
            IntersectPlane(shape, p.albedo, o, d, t_min, &hit);
          } else if constexpr (std::is_same_v<T, Sphere>) {
            IntersectSphere(shape, p.albedo, o, d, t_min, &hit);
          } else {
            IntersectBox(shape, p.albedo, o, d, t_min, &hit);
          }
        },
        p.shape);
  }
  for (const MovingBox& m : scene.moving_boxes) {
    const Eigen::Vector3d shift = m.velocity * frame;
    IntersectBox({m.box.min + shift, m.box.max + shift}, m.albedo, o, d, t_min,
                 &hit);
  }
  return hit;
}

json Vec(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d ReadVec(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError("scene file: expected a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json PoseJson(const RigidTransform& t) {
  const Eigen::Matrix3d& r = t.rotation();
  return {{"rotation",
           {r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0),
            r(2, 1), r(2, 2)}},
          {"translation", Vec(t.translation())}};
}

RigidTransform ReadPose(const json& j) {
  const auto& r = j.at("rotation");
  if (!r.is_array() || r.size() != 9) {
    throw FormatError("scene file: rotation needs 9 values");
  }
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = r[static_cast<size_t>(i)].get<double>();
  return RigidTransform::FromApproximateRotation(m, ReadVec(j.at("translation")));
}

std::string FrameName(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%010d", index);
  return buf;
}

}  // namespace

void SceneSpec::Validate() const {
  if (primitives.empty() && moving_boxes.empty()) {
    throw DomainError("scene has no primitives");
  }
  auto check_box = [](const Box& b) {
    if (!(b.min.array() < b.max.array()).all()) {
      throw DomainError("box min corner must be below max corner");
    }
  };
  for (const Primitive& p : primitives) {
    if (const auto* s = std::get_if<Sphere>(&p.shape); s && !(s->radius > 0.0)) {
      throw DomainError("sphere radius must be positive");
    }
    if (const auto* b = std::get_if<Box>(&p.shape)) check_box(*b);
    if (const auto* pl = std::get_if<Plane>(&p.shape);
        pl && !(pl->normal.norm() > 0.0)) {
      throw DomainError("plane normal must be nonzero");
    }
  }
  for (const MovingBox& m : moving_boxes) check_box(m.box);
}

RenderOutput Render(const SceneSpec& scene,
                    const RigidTransform& world_from_camera, const Intrinsics& k,
                    int frame) {
  scene.Validate();
  k.Validate();
  RenderOutput out{DepthMap(k.width, k.height, 0.0),
                   GrayImage(k.width, k.height, kSkyIntensity)};
  const Eigen::Matrix3d& r = world_from_camera.rotation();
  const Eigen::Vector3d& o = world_from_camera.translation();
  ParallelFor(
      static_cast<size_t>(k.height),
      [&](size_t begin, size_t end) {
        for (size_t yy = begin; yy < end; ++yy) {
          const int y = static_cast<int>(yy);
          for (int x = 0; x < k.width; ++x) {
            // Camera-frame direction with unit z, so the ray parameter is
            // the z-depth.
            const Eigen::Vector3d dir_c((x - k.cx) / k.fx, (y - k.cy) / k.fy,
                                        1.0);
            const Eigen::Vector3d dir = r * dir_c;
            const Hit hit = CastRay(scene, o, dir, kMinDepth, frame);
            if (!std::isfinite(hit.t)) continue;
            out.depth(x, y) = hit.t;
            const double shade = std::abs(hit.normal.dot(dir.normalized()));
            out.intensity(x, y) = hit.albedo * (0.35 + 0.65 * shade);
          }
        }
      },
      8);
  return out;
}

DepthMap RenderDepth(const SceneSpec& scene,
                     const RigidTransform& world_from_camera,
                     const Intrinsics& k, int frame) {
  return Render(scene, world_from_camera, k, frame).depth;
}

SceneSpec TransformScene(const SceneSpec& scene, const RigidTransform& motion) {
  const bool pure_translation =
      (motion.rotation() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() ==
      0.0;
  SceneSpec out = scene;
  for (Primitive& p : out.primitives) {
    std::visit(
        [&](auto& shape) {
          using T = std::decay_t<decltype(shape)>;
          if constexpr (std::is_same_v<T, Plane>) {
            shape.point = motion * shape.point;
            shape.normal = motion.rotation() * shape.normal;
          } else if constexpr (std::is_same_v<T, Sphere>) {
            shape.center = motion * shape.center;
          } else {
            if (!pure_translation) {
              throw DomainError("axis-aligned boxes only support translation");
            }
            shape.min += motion.translation();
            shape.max += motion.translation();
          }
        },
        p.shape);
  }
  for (MovingBox& m : out.moving_boxes) {
    if (!pure_translation) {
      throw DomainError("axis-aligned boxes only support translation");
    }
    m.box.min += motion.translation();
    m.box.max += motion.translation();
  }
  return out;
}

DepthMap SampleLidarPattern(const DepthMap& dense, const LidarPattern& pattern) {
  if (!(pattern.density_target > 0.0 && pattern.density_target <= 1.0)) {
    throw DomainError("lidar pattern: density target must lie in (0, 1]");
  }
  if (pattern.density_target == 1.0) return dense;
  const int w = dense.width();
  const int h = dense.height();
  if (pattern.beam_rows <= 0 || pattern.beam_rows > h) {
    throw DomainError("lidar pattern: beam rows must lie in [1, height]");
  }
  const double total = static_cast<double>(dense.size());
  const double needed = pattern.density_target * total;
  const double tolerance = 0.01 * total;

  std::vector<int> rows(static_cast<size_t>(pattern.beam_rows));
  size_t capacity = 0;
  for (int b = 0; b < pattern.beam_rows; ++b) {
    rows[static_cast<size_t>(b)] =
        static_cast<int>((b + 0.5) * h / pattern.beam_rows);
    for (double d : dense.row(rows[static_cast<size_t>(b)])) {
      capacity += d > 0.0 ? 1 : 0;
    }
  }
  if (static_cast<double>(capacity) < needed - tolerance) {
    throw RangeError("lidar pattern: " + std::to_string(pattern.beam_rows) +
                     " scanlines hold only " + std::to_string(capacity) +
                     " valid pixels, target needs " +
                     std::to_string(static_cast<size_t>(needed)));
  }

  // Stratified columns: `per_beam` cells per scanline, one jittered sample
  // per cell. Refine the cell count until the kept fraction is on target.
  auto sample = [&](double per_beam, DepthMap* out) {
    Rng rng(pattern.seed);
    *out = DepthMap(w, h, 0.0);
    size_t kept = 0;
    const double cell = w / per_beam;
    for (int row : rows) {
      const double phase = rng.Uniform();
      const int cells = static_cast<int>(std::ceil(per_beam));
      for (int c = 0; c < cells; ++c) {
        const int x = static_cast<int>((c + phase * 0.5 + rng.Uniform() * 0.5) *
                                       cell);
        if (x >= w) break;
        const double d = dense(x, row);
        if (d > 0.0 && (*out)(x, row) == 0.0) {
          double value = d;
          if (pattern.depth_noise > 0.0) {
            value = std::max(kMinDepth, d + pattern.depth_noise * rng.Normal());
          }
          (*out)(x, row) = value;
          ++kept;
        }
      }
    }
    return static_cast<double>(kept);
  };

  double per_beam = needed / pattern.beam_rows;
  DepthMap out;
  for (int iter = 0; iter < 40; ++iter) {
    per_beam = std::clamp(per_beam, 1.0, static_cast<double>(w));
    const double kept = sample(per_beam, &out);
    if (std::abs(kept - needed) <= tolerance) return out;
    if (kept <= 0.0) {
      per_beam *= 2.0;
    } else {
      per_beam *= needed / kept;
    }
  }
  // Last resort: every valid scanline pixel.
  out = DepthMap(w, h, 0.0);
  size_t kept = 0;
  for (int row : rows) {
    for (int x = 0; x < w; ++x) {
      if (dense(x, row) > 0.0) {
        out(x, row) = dense(x, row);
        ++kept;
      }
    }
  }
  if (std::abs(static_cast<double>(kept) - needed) > tolerance) {
    throw RangeError("lidar pattern: density target unreachable");
  }
  return out;
}

SyntheticSequence MakeSequence(const SceneSpec& scene,
                               const Trajectory& trajectory, const Intrinsics& k,
                               const LidarPattern& pattern) {
  if (trajectory.poses.empty()) {
    throw DomainError("make_sequence: trajectory is empty");
  }
  SyntheticSequence out;
  out.trajectory = trajectory;
  out.sequence.intrinsics = k;
  const auto n = static_cast<int>(trajectory.poses.size());
  for (int i = 0; i < n; ++i) {
    RenderOutput render =
        Render(scene, trajectory.poses[static_cast<size_t>(i)], k, i);
    LidarPattern frame_pattern = pattern;
    frame_pattern.seed = MixSeed(pattern.seed, static_cast<uint64_t>(i));
    Frame frame;
    frame.index = i;
    frame.name = FrameName(i);
    frame.sparse = SampleLidarPattern(render.depth, frame_pattern);
    frame.groundtruth = std::move(render.depth);
    frame.image = std::move(render.intensity);
    out.sequence.frames.push_back(std::move(frame));
  }
  for (int i = 0; i + 1 < n; ++i) {
    out.sequence.relative_poses.push_back(
        trajectory.poses[static_cast<size_t>(i + 1)].Inverse() *
        trajectory.poses[static_cast<size_t>(i)]);
  }
  return out;
}

SpinningLidar SpinningLidar::Hdl64e() {
  SpinningLidar lidar;
  for (int i = 0; i < 32; ++i) {
    lidar.elevations.push_back((2.0 - i * (2.0 + 8.33) / 31.0) * kDegToRad);
  }
  for (int i = 0; i < 32; ++i) {
    lidar.elevations.push_back((-8.83 - i * (24.33 - 8.83) / 31.0) * kDegToRad);
  }
  // About 1.33M points/s spread over 64 lasers at the 10 Hz spin rate.
  lidar.azimuth_step = 360.0 / 2083.0 * kDegToRad;
  return lidar;
}

PointCloud SimulateLidarScan(const SceneSpec& scene,
                             const RigidTransform& world_from_lidar,
                             const SpinningLidar& lidar, int frame) {
  scene.Validate();
  if (!(lidar.azimuth_step > 0.0)) {
    throw DomainError("lidar: azimuth step must be positive");
  }
  const int steps =
      static_cast<int>(std::floor(2.0 * std::numbers::pi / lidar.azimuth_step));
  const size_t beams = lidar.elevations.size();
  std::vector<Eigen::Vector3d> hits(beams * static_cast<size_t>(steps));
  std::vector<char> valid(hits.size(), 0);
  const Eigen::Matrix3d& r = world_from_lidar.rotation();
  const Eigen::Vector3d& o = world_from_lidar.translation();
  ParallelFor(
      beams,
      [&](size_t begin, size_t end) {
        for (size_t b = begin; b < end; ++b) {
          const double e = lidar.elevations[b];
          for (int s = 0; s < steps; ++s) {
            const double a = -std::numbers::pi + s * lidar.azimuth_step;
            const Eigen::Vector3d dir(std::cos(e) * std::cos(a),
                                      std::cos(e) * std::sin(a), std::sin(e));
            const Hit hit = CastRay(scene, o, r * dir, 0.5, frame);
            if (!(hit.t < lidar.max_range)) continue;
            const size_t i = b * static_cast<size_t>(steps) +
                             static_cast<size_t>(s);
            hits[i] = hit.t * dir;
            valid[i] = 1;
          }
        }
      },
      1);
  PointCloud cloud;
  for (size_t i = 0; i < hits.size(); ++i) {
    if (valid[i]) cloud.push_back(hits[i]);
  }
  return cloud;
}

Eigen::Matrix3d CameraLookingAlongX() {
  Eigen::Matrix3d r;
  // Columns: camera x (right) = -y, camera y (down) = -z, camera z = +x.
  r << 0, 0, 1, -1, 0, 0, 0, -1, 0;
  return r;
}

CalibBundle SyntheticRigCalibration(const Intrinsics& k) {
  CalibBundle calib = CalibBundle::Identity(k);
  // camera <- lidar is the inverse of the camera axes expressed in the
  // x-forward/y-left/z-up frame.
  calib.lidar_to_camera =
      RigidTransform::Rotation(CameraLookingAlongX().transpose());
  return calib;
}

Trajectory MakeDriveTrajectory(const RigidTransform& start, int frames,
                               double step, double yaw_per_frame,
                               const PitchOscillation& pitch) {
  if (pitch.amplitude != 0.0 && !(pitch.period > 0.0)) {
    throw DomainError("drive trajectory: pitch period must be positive");
  }
  Trajectory traj;
  Eigen::Matrix3d r = start.rotation();
  Eigen::Vector3d t = start.translation();
  const Eigen::Matrix3d turn =
      Eigen::AngleAxisd(yaw_per_frame, Eigen::Vector3d::UnitY())
          .toRotationMatrix();
  for (int i = 0; i < frames; ++i) {
    Eigen::Matrix3d body = r;
    if (pitch.amplitude != 0.0) {
      const double a =
          pitch.amplitude *
          std::sin(2.0 * std::numbers::pi * i / pitch.period + pitch.phase);
      body = r * Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()).toRotationMatrix();
    }
    traj.poses.push_back(RigidTransform::FromApproximateRotation(body, t));
    t += step * r.col(2);
    r = r * turn;
  }
  return traj;
}

SceneSpec MakeStreetScene(uint64_t seed) {
  Rng rng(MixSeed(seed, 0x5ce7e));
  SceneSpec scene;
  scene.primitives.push_back(
      {Plane{Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitZ()}, 0.3});

  // Facades on both sides of the street.
  for (const double side : {1.0, -1.0}) {
    double x = rng.Uniform(2.0, 6.0);
    while (x < 90.0) {
      const double length = rng.Uniform(8.0, 20.0);
      const double setback = rng.Uniform(7.0, 10.0);
      const double height = rng.Uniform(6.0, 14.0);
      const double y0 = side > 0 ? setback : -setback - 8.0;
      scene.primitives.push_back(
          {Box{{x, y0, 0.0}, {x + length, y0 + 8.0, height}},
           rng.Uniform(0.3, 0.9)});
      x += length + rng.Uniform(0.0, 4.0);
    }
  }
  // Parked cars.
  const int cars = rng.UniformInt(3, 6);
  for (int i = 0; i < cars; ++i) {
    const double side = rng.Uniform() < 0.5 ? 1.0 : -1.0;
    const double x = rng.Uniform(8.0, 70.0);
    const double yc = side * rng.Uniform(4.0, 4.6);
    scene.primitives.push_back(
        {Box{{x, yc - 0.9, 0.0}, {x + 4.2, yc + 0.9, 1.5}},
         rng.Uniform(0.1, 0.95)});
  }
  // Bushes and poles on the sidewalk.
  const int bushes = rng.UniformInt(2, 4);
  for (int i = 0; i < bushes; ++i) {
    const double side = rng.Uniform() < 0.5 ? 1.0 : -1.0;
    const double radius = rng.Uniform(0.8, 1.5);
    scene.primitives.push_back(
        {Sphere{{rng.Uniform(10.0, 80.0), side * rng.Uniform(5.5, 6.5), radius},
                radius},
         rng.Uniform(0.2, 0.6)});
  }
  const int poles = rng.UniformInt(2, 5);
  for (int i = 0; i < poles; ++i) {
    const double side = rng.Uniform() < 0.5 ? 1.0 : -1.0;
    const double x = rng.Uniform(6.0, 80.0);
    const double y = side * rng.Uniform(5.2, 6.0);
    scene.primitives.push_back(
        {Box{{x, y - 0.15, 0.0}, {x + 0.3, y + 0.15, 4.0}}, 0.8});
  }
  // Closing facade at the end of the street.
  scene.primitives.push_back(
      {Box{{100.0, -40.0, 0.0}, {105.0, 40.0, rng.Uniform(12.0, 20.0)}}, 0.6});
  return scene;
}

SyntheticSequence MakeStreetSequence(int index, int frames) {
  if (index < 0) throw DomainError("street sequence: index must be >= 0");
  const RigidTransform start = RigidTransform::FromRotationTranslation(
      CameraLookingAlongX(), Eigen::Vector3d(0.0, 0.0, 1.65));
  const PitchOscillation pitch{0.2 * kDegToRad, 6.0, static_cast<double>(index)};
  LidarPattern pattern;
  pattern.seed = 100 + static_cast<uint64_t>(index);
  return MakeSequence(MakeStreetScene(static_cast<uint64_t>(index) + 1),
                      MakeDriveTrajectory(start, frames, 1.0, 0.0, pitch),
                      KittiCropIntrinsics(), pattern);
}

Intrinsics KittiCropIntrinsics() {
  // Rectified camera 2 of the 2011_09_26 recordings after the bottom-center
  // crop from 1242 x 375 (13 columns, 23 rows removed).
  return {721.5377, 721.5377, 609.5593 - 13.0, 172.854 - 23.0, 1216, 352};
}

SceneFile ReadSceneFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file '" + path.string() + "'");
  SceneFile file;
  try {
    const json doc = json::parse(in);
    const json& cam = doc.at("camera");
    file.intrinsics = {cam.at("fx").get<double>(), cam.at("fy").get<double>(),
                       cam.at("cx").get<double>(), cam.at("cy").get<double>(),
                       cam.at("width").get<int>(),  cam.at("height").get<int>()};
    file.intrinsics.Validate();

    if (doc.contains("street")) {
      file.street_seed = doc.at("street").at("seed").get<uint64_t>();
      file.scene = MakeStreetScene(*file.street_seed);
    }
    if (doc.contains("scene")) {
      const json& scene = doc.at("scene");
      for (const json& p : scene.value("primitives", json::array())) {
        Primitive prim;
        prim.albedo = p.value("albedo", 0.5);
        const std::string type = p.at("type").get<std::string>();
        if (type == "plane") {
          prim.shape = Plane{ReadVec(p.at("point")), ReadVec(p.at("normal"))};
        } else if (type == "sphere") {
          prim.shape = Sphere{ReadVec(p.at("center")), p.at("radius").get<double>()};
        } else if (type == "box") {
          prim.shape = Box{ReadVec(p.at("min")), ReadVec(p.at("max"))};
        } else {
          throw FormatError("scene file: unknown primitive type '" + type + "'");
        }
        file.scene.primitives.push_back(std::move(prim));
      }
      for (const json& m : scene.value("moving_boxes", json::array())) {
        file.scene.moving_boxes.push_back(
            {Box{ReadVec(m.at("min")), ReadVec(m.at("max"))},
             ReadVec(m.at("velocity")), m.value("albedo", 0.9)});
      }
    }
    file.scene.Validate();

    const json& traj = doc.at("trajectory");
    if (traj.contains("poses")) {
      for (const json& p : traj.at("poses")) {
        file.trajectory.poses.push_back(ReadPose(p));
      }
    } else {
      const json& drive = traj.at("drive");
      RigidTransform start = RigidTransform::FromRotationTranslation(
          CameraLookingAlongX(), Eigen::Vector3d(0.0, 0.0, 1.65));
      if (drive.contains("start")) start = ReadPose(drive.at("start"));
      file.trajectory = MakeDriveTrajectory(
          start, drive.at("frames").get<int>(), drive.value("step", 1.0),
          drive.value("yaw_per_frame", 0.0),
          PitchOscillation{drive.value("pitch_amplitude", 0.0),
                           drive.value("pitch_period", 6.0),
                           drive.value("pitch_phase", 0.0)});
    }
    if (file.trajectory.poses.empty()) {
      throw FormatError("scene file: trajectory has no poses");
    }

    if (doc.contains("lidar")) {
      const json& l = doc.at("lidar");
      file.pattern.density_target = l.value("density", 0.06);
      file.pattern.beam_rows = l.value("beam_rows", 64);
      file.pattern.seed = l.value("seed", uint64_t{0});
      file.pattern.depth_noise = l.value("depth_noise", 0.0);
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return file;
}

void WriteSceneFile(const std::filesystem::path& path, const SceneFile& file) {
  json doc;
  const Intrinsics& k = file.intrinsics;
  doc["camera"] = {{"fx", k.fx}, {"fy", k.fy},       {"cx", k.cx},
                   {"cy", k.cy}, {"width", k.width}, {"height", k.height}};
  if (file.street_seed) {
    doc["street"] = {{"seed", *file.street_seed}};
  } else {
    json prims = json::array();
    for (const Primitive& p : file.scene.primitives) {
      json j;
      std::visit(
          [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Plane>) {
              j = {{"type", "plane"},
                   {"point", Vec(shape.point)},
                   {"normal", Vec(shape.normal)}};
            } else if constexpr (std::is_same_v<T, Sphere>) {
              j = {{"type", "sphere"},
                   {"center", Vec(shape.center)},
                   {"radius", shape.radius}};
            } else {
              j = {{"type", "box"}, {"min", Vec(shape.min)}, {"max", Vec(shape.max)}};
            }
          },
          p.shape);
      j["albedo"] = p.albedo;
      prims.push_back(std::move(j));
    }
    json movers = json::array();
    for (const MovingBox& m : file.scene.moving_boxes) {
      movers.push_back({{"min", Vec(m.box.min)},
                        {"max", Vec(m.box.max)},
                        {"velocity", Vec(m.velocity)},
                        {"albedo", m.albedo}});
    }
    doc["scene"] = {{"primitives", prims}, {"moving_boxes", movers}};
  }
  json poses = json::array();
  for (const RigidTransform& p : file.trajectory.poses) poses.push_back(PoseJson(p));
  doc["trajectory"] = {{"poses", poses}};
  doc["lidar"] = {{"density", file.pattern.density_target},
                  {"beam_rows", file.pattern.beam_rows},
                  {"seed", file.pattern.seed},
                  {"depth_noise", file.pattern.depth_noise}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << "\n";
}

std::filesystem::path WriteKittiLayout(const std::filesystem::path& out_dir,
                                       const SceneSpec& scene,
                                       const SyntheticSequence& synthetic,
                                       bool velodyne_scans) {
  namespace fs = std::filesystem;
  const Sequence& seq = synthetic.sequence;
  const CalibBundle calib = SyntheticRigCalibration(seq.intrinsics);
  const fs::path calib_dir = "calib";
  const fs::path oxts_dir = fs::path("oxts") / "data";
  const fs::path sparse_dir = fs::path("proj_depth") / "velodyne_raw" / "image_02";
  const fs::path gt_dir = fs::path("proj_depth") / "groundtruth" / "image_02";
  const fs::path image_dir = fs::path("image_02") / "data";
  const fs::path velo_dir = fs::path("velodyne_points") / "data";
  for (const fs::path& d : {calib_dir, oxts_dir, sparse_dir, gt_dir, image_dir}) {
    fs::create_directories(out_dir / d);
  }
  if (velodyne_scans) fs::create_directories(out_dir / velo_dir);
  WriteCalibBundle(out_dir / calib_dir, calib);

  // Shift the world so the first frame sits at the anchor coordinates; the
  // Mercator scale of the sequence is then cos(anchor latitude).
  const double s = MercatorScale(kAnchorLatitude);
  const double lat0 = kAnchorLatitude * kDegToRad;
  const RigidTransform camera_from_imu = calib.CameraFromImu();
  const RigidTransform first = synthetic.trajectory.poses.front() * camera_from_imu;
  const Eigen::Vector3d anchor(
      s * kEarthRadius * kAnchorLongitude * kDegToRad,
      s * kEarthRadius * std::log(std::tan(std::numbers::pi / 4.0 + lat0 / 2.0)),
      kAnchorAltitude);
  const RigidTransform shift = RigidTransform::Translation(
      anchor - first.translation());

  SequenceIndex index;
  index.base_dir = out_dir;
  index.calib_dir = calib_dir;
  std::ofstream poses_txt(out_dir / "poses.txt");
  poses_txt.precision(17);
  for (size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    const RigidTransform& world_from_camera = synthetic.trajectory.poses[i];
    const std::string file = f.name + ".png";
    SequenceIndex::Entry e;
    e.index = f.index;
    e.name = f.name;
    e.sparse = sparse_dir / file;
    WriteDepthPng(out_dir / e.sparse, f.sparse);
    if (f.groundtruth) {
      e.groundtruth = gt_dir / file;
      WriteDepthPng(out_dir / *e.groundtruth, *f.groundtruth);
    }
    if (f.image) {
      e.image = image_dir / file;
      WriteGrayPng(out_dir / *e.image, *f.image);
    }
    e.oxts = WorldPoseToOxts(shift * world_from_camera * camera_from_imu,
                             kAnchorLatitude);
    {
      std::ofstream oxts(out_dir / oxts_dir / (f.name + ".txt"));
      if (!oxts) throw IoError("cannot write oxts record for frame " + f.name);
      oxts << FormatOxtsLine(*e.oxts) << "\n";
    }
    if (velodyne_scans) {
      const RigidTransform world_from_lidar =
          world_from_camera * calib.CameraFromLidar();
      LidarScan scan;
      scan.points = SimulateLidarScan(scene, world_from_lidar,
                                      SpinningLidar::Hdl64e(), f.index);
      scan.reflectance.assign(scan.points.size(), 0.5f);
      WriteVelodyneScan(out_dir / velo_dir / (f.name + ".bin"), scan);
    }
    const Eigen::Matrix4d m = world_from_camera.Matrix();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        poses_txt << m(r, c) << (r == 2 && c == 3 ? '\n' : ' ');
      }
    }
    index.frames.push_back(std::move(e));
  }
  const fs::path manifest = out_dir / "manifest.json";
  WriteSequenceIndex(manifest, index);
  return manifest;
}

}  // namespace tdc::synth
