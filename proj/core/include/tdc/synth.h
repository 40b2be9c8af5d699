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

#ifndef TDC_SYNTH_H_
#define TDC_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tdc/calibration.h"
#include "tdc/geometry.h"
#include "tdc/grid.h"
#include "tdc/sequence.h"

namespace tdc::synth {

struct Plane {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
};

struct Sphere {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 1.0;
};

// Axis-aligned in the world frame.
struct Box {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Ones();
};

using Shape = std::variant<Plane, Sphere, Box>;

struct Primitive {
  Shape shape;
  // Flat shading reflectance in [0, 1].
  double albedo = 0.5;
};

// A box translating by `velocity` (meters per frame). Breaks the static
// scene assumption on purpose.
struct MovingBox {
  Box box;
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double albedo = 0.9;
};

struct SceneSpec {
  std::vector<Primitive> primitives;
  std::vector<MovingBox> moving_boxes;

  // Throws DomainError on a non-positive radius, an inverted box or a
  // zero-length plane normal.
  void Validate() const;
  bool IsStatic() const { return moving_boxes.empty(); }
};

// World <- camera pose per frame.
struct Trajectory {
  std::vector<RigidTransform> poses;
};

struct RenderOutput {
  DepthMap depth;
  GrayImage intensity;
};

// Ray casts every pixel. Stores camera z-depth of the nearest hit, 0 for a
// miss. `frame` positions the moving boxes.
RenderOutput Render(const SceneSpec& scene, const RigidTransform& world_from_camera,
                    const Intrinsics& k, int frame = 0);
DepthMap RenderDepth(const SceneSpec& scene,
                     const RigidTransform& world_from_camera,
                     const Intrinsics& k, int frame = 0);

// Applies `motion` to every primitive. Boxes only accept pure translations.
SceneSpec TransformScene(const SceneSpec& scene, const RigidTransform& motion);

struct LidarPattern {
  double density_target = 0.06;
  int beam_rows = 64;
  uint64_t seed = 0;
  // Standard deviation of additive depth noise in meters; 0 disables it.
  double depth_noise = 0.0;
};

// Keeps pixels along `beam_rows` equally spaced scanlines, with per-beam
// random column jitter, until the valid fraction is within 1% (absolute) of
// the target. Throws DomainError for a target outside (0, 1] and RangeError
// when the scanlines cannot hold enough valid pixels.
DepthMap SampleLidarPattern(const DepthMap& dense, const LidarPattern& pattern);

// Generated sequence plus the ground-truth trajectory.
struct SyntheticSequence {
  Sequence sequence;
  Trajectory trajectory;
};

SyntheticSequence MakeSequence(const SceneSpec& scene,
                               const Trajectory& trajectory,
                               const Intrinsics& k, const LidarPattern& pattern);

// Simulated spinning lidar. One laser per elevation angle (radians), fired
// every `azimuth_step` radians over a full turn; returns beyond `max_range`
// are dropped.
struct SpinningLidar {
  std::vector<double> elevations;
  double azimuth_step = 0.0;
  double max_range = 120.0;

  // 64-laser layout of the KITTI recording rig: 32 lasers from +2 deg to
  // -8.33 deg, 32 from -8.83 deg to -24.33 deg, about 0.17 deg azimuth step
  // at 10 Hz.
  static SpinningLidar Hdl64e();
};

// Lidar frame: x forward, y left, z up. `world_from_lidar` places it.
PointCloud SimulateLidarScan(const SceneSpec& scene,
                             const RigidTransform& world_from_lidar,
                             const SpinningLidar& lidar, int frame = 0);

// KITTI-style camera frame (x right, y down, z forward) looking along the
// world +x axis with world z up.
Eigen::Matrix3d CameraLookingAlongX();

// Rig used by synthetic sequences: lidar and IMU share the camera center,
// with x forward, y left, z up; rectification and baseline are identities.
CalibBundle SyntheticRigCalibration(const Intrinsics& k);

// Body pitch about the camera x axis, amplitude * sin(2 pi i / period +
// phase) radians at frame i. Mimics suspension motion; the path itself is
// unaffected.
struct PitchOscillation {
  double amplitude = 0.0;
  double period = 6.0;
  double phase = 0.0;
};

// Straight-line or constant-turn trajectory. Camera starts at `start`;
// each frame advances `step` meters along the viewing direction and yaws by
// `yaw_per_frame` radians around the camera's vertical axis.
Trajectory MakeDriveTrajectory(const RigidTransform& start, int frames,
                               double step, double yaw_per_frame,
                               const PitchOscillation& pitch = {});

// A small street: ground plane, building facades, parked boxes and spheres.
// Different seeds give different layouts. Camera convention as in
// CameraLookingAlongX, camera height 1.65 m above the ground plane z = 0.
SceneSpec MakeStreetScene(uint64_t seed);

// KITTI-like intrinsics of the 352 x 1216 evaluation crop.
Intrinsics KittiCropIntrinsics();

// Member `index` of the synthetic street suite: street scene index + 1,
// straight 1 m/frame drive with a 0.2 deg pitch oscillation of period 6
// (phase `index`), 6% lidar pattern seeded with 100 + index, rendered at
// KittiCropIntrinsics.
SyntheticSequence MakeStreetSequence(int index, int frames);

// Scene description file: {"scene": ..., "trajectory": ..., "camera": ...,
// "lidar": ...}. See README for the schema.
struct SceneFile {
  SceneSpec scene;
  // Set when the scene came from {"street": {"seed": N}}.
  std::optional<uint64_t> street_seed;
  Trajectory trajectory;
  Intrinsics intrinsics;
  LidarPattern pattern;
};

SceneFile ReadSceneFile(const std::filesystem::path& path);
void WriteSceneFile(const std::filesystem::path& path, const SceneFile& file);

// Writes a sequence in the KITTI depth-completion layout under `out_dir`:
// calibration files, oxts/data, sparse depth, ground truth, gray images
// and manifest.json. OXTS records encode the trajectory through the rig of
// SyntheticRigCalibration, anchored at latitude 49 deg. With
// `velodyne_scans` set, the scene is also scanned by a simulated HDL-64E
// into velodyne_points/data. Returns the manifest path.
std::filesystem::path WriteKittiLayout(const std::filesystem::path& out_dir,
                                       const SceneSpec& scene,
                                       const SyntheticSequence& synthetic,
                                       bool velodyne_scans = false);

}  // namespace tdc::synth

#endif  // TDC_SYNTH_H_
