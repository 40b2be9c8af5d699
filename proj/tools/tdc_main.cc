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

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.h"

namespace {

std::string Version() { return "tdc 0.3.0"; }

}  // namespace

int main(int argc, char** argv) {
  using namespace tdc::cli;
  CLI::App app{"Temporal depth completion toolkit", "tdc"};
  app.set_version_flag("--version", Version());
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_flag("--json", common.json, "Machine-readable JSON on stdout");
  app.add_flag("--crop", common.crop,
               "Bottom-center crop inputs to 1216x352 before use");
  app.add_option("--config", common.config, "Pipeline config (TOML)");

  SynthOptions synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Render a synthetic sequence in KITTI layout");
  synth_cmd->add_option("scene", synth.scene, "Scene file (JSON)");
  synth_cmd->add_option("-o,--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--frames", synth.frames, "Number of frames")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--street", synth.street,
                        "Built-in street scene index when no scene file is given")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", synth.seed, "Lidar pattern seed");
  synth_cmd->add_flag("--velodyne", synth.velodyne,
                      "Also write simulated HDL-64E scans");

  PosesOptions poses;
  CLI::App* poses_cmd = app.add_subcommand(
      "poses", "Relative camera poses between consecutive OXTS records");
  poses_cmd->add_option("manifest", poses.manifest, "Sequence manifest");
  poses_cmd->add_option("--oxts", poses.oxts, "OXTS files, in frame order");
  poses_cmd->add_option("--calib", poses.calib, "KITTI calibration directory");
  poses_cmd->add_option("--camera", poses.camera, "Target camera")
      ->check(CLI::Range(0, 3));
  poses_cmd->add_option("-o,--out", poses.out, "Write poses here instead of stdout");

  WarpOptions warp;
  CLI::App* warp_cmd =
      app.add_subcommand("warp", "Forward-warp a depth PNG to the next frame");
  warp_cmd->add_option("depth", warp.depth, "Depth PNG")->required();
  warp_cmd->add_option("-o,--out", warp.out, "Output depth PNG")->required();
  CLI::Option* pose_opt =
      warp_cmd->add_option("--pose", warp.pose, "Relative pose file (3x4 rows)");
  warp_cmd->add_option("--line", warp.pose_line, "Line of the pose file to use")
      ->check(CLI::NonNegativeNumber);
  CLI::Option* oxts_opt =
      warp_cmd->add_option("--oxts", warp.oxts, "OXTS files of the two frames")
          ->expected(2);
  pose_opt->excludes(oxts_opt);
  warp_cmd->add_option("--calib", warp.calib, "KITTI calibration directory");
  warp_cmd->add_option("--camera", warp.camera, "Target camera")
      ->check(CLI::Range(0, 3));
  warp_cmd->add_option("--intrinsics", warp.intrinsics, "fx,fy,cx,cy")
      ->delimiter(',')
      ->expected(4);

  CompleteOptions complete;
  CLI::App* complete_cmd =
      app.add_subcommand("complete", "Run the completion pipeline on a sequence");
  complete_cmd->add_option("manifest", complete.manifest, "Sequence manifest")
      ->required();
  complete_cmd->add_option("-o,--out", complete.out, "Output directory")
      ->required();
  complete_cmd->add_flag("--temporal", complete.temporal,
                         "Carry warped predictions between frames");

  EvalOptions eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Metrics of predictions against ground truth");
  eval_cmd->add_option("--pred", eval.pred, "Prediction PNG or directory")
      ->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth PNG or directory")
      ->required();

  DiffmapOptions diff;
  CLI::App* diff_cmd = app.add_subcommand(
      "diffmap", "Block-wise MAE difference of two predictions as a Turbo PNG");
  diff_cmd->add_option("--pred-a", diff.pred_a, "Prediction A (PNG or directory)")
      ->required();
  diff_cmd->add_option("--pred-b", diff.pred_b, "Prediction B (PNG or directory)")
      ->required();
  diff_cmd->add_option("--gt", diff.gt, "Ground truth (PNG or directory)")
      ->required();
  diff_cmd->add_option("-o,--out", diff.out, "Output RGB PNG")->required();
  diff_cmd->add_option("--block", diff.block, "Block size in pixels")
      ->check(CLI::PositiveNumber);
  diff_cmd->add_option("--range", diff.range,
                       "Color range in mm; 0 picks the largest magnitude")
      ->check(CLI::NonNegativeNumber);

  CurveOptions curve;
  CLI::App* curve_cmd = app.add_subcommand(
      "curve", "Average RMSE per frame over several complete runs");
  curve_cmd->add_option("results", curve.results, "metrics.json files")
      ->required();
  curve_cmd->add_option("-o,--out", curve.out, "Write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  CLI::App* used = app.get_subcommands().front();
  try {
    if (used == synth_cmd) RunSynth(synth, common);
    if (used == poses_cmd) RunPoses(poses, common);
    if (used == warp_cmd) RunWarp(warp, common);
    if (used == complete_cmd) RunComplete(complete, common);
    if (used == eval_cmd) RunEval(eval, common);
    if (used == diff_cmd) RunDiffmap(diff, common);
    if (used == curve_cmd) RunCurve(curve, common);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tdc %s: error: %s\n", used->get_name().c_str(),
                 e.what());
    return 1;
  }
  return 0;
}
