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

#ifndef TDC_TOOLS_COMMANDS_H_
#define TDC_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tdc::cli {

struct CommonOptions {
  bool json = false;
  bool crop = false;
  std::optional<std::filesystem::path> config;
};

struct SynthOptions {
  std::optional<std::filesystem::path> scene;
  std::filesystem::path out;
  std::optional<int> frames;
  int street = 0;
  std::optional<uint64_t> seed;
  bool velodyne = false;
};

struct PosesOptions {
  std::optional<std::filesystem::path> manifest;
  std::vector<std::filesystem::path> oxts;
  std::optional<std::filesystem::path> calib;
  int camera = 2;
  std::optional<std::filesystem::path> out;
};

struct WarpOptions {
  std::filesystem::path depth;
  std::filesystem::path out;
  std::optional<std::filesystem::path> pose;
  int pose_line = 0;
  std::vector<std::filesystem::path> oxts;
  std::optional<std::filesystem::path> calib;
  int camera = 2;
  std::vector<double> intrinsics;
};

struct CompleteOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;
  bool temporal = false;
};

struct EvalOptions {
  std::filesystem::path pred;
  std::filesystem::path gt;
};

struct DiffmapOptions {
  std::filesystem::path pred_a;
  std::filesystem::path pred_b;
  std::filesystem::path gt;
  std::filesystem::path out;
  int block = 8;
  double range = 0.0;
};

struct CurveOptions {
  std::vector<std::filesystem::path> results;
  std::optional<std::filesystem::path> out;
};

// Each command prints its report to stdout and throws on failure.
void RunSynth(const SynthOptions& opt, const CommonOptions& common);
void RunPoses(const PosesOptions& opt, const CommonOptions& common);
void RunWarp(const WarpOptions& opt, const CommonOptions& common);
void RunComplete(const CompleteOptions& opt, const CommonOptions& common);
void RunEval(const EvalOptions& opt, const CommonOptions& common);
void RunDiffmap(const DiffmapOptions& opt, const CommonOptions& common);
void RunCurve(const CurveOptions& opt, const CommonOptions& common);

}  // namespace tdc::cli

#endif  // TDC_TOOLS_COMMANDS_H_
