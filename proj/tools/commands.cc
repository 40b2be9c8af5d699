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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tdc/analysis.h"
#include "tdc/calibration.h"
#include "tdc/completion.h"
#include "tdc/crop.h"
#include "tdc/errors.h"
#include "tdc/metrics.h"
#include "tdc/oxts.h"
#include "tdc/parallel.h"
#include "tdc/pipeline_config.h"
#include "tdc/png_io.h"
#include "tdc/sequence.h"
#include "tdc/synth.h"
#include "tdc/warp.h"

namespace tdc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void RequireFile(const fs::path& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw IoError(std::string(what) + " '" + path.string() + "' does not exist");
  }
}

void RequireExisting(const fs::path& path, const char* what) {
  if (!fs::exists(path)) {
    throw IoError(std::string(what) + " '" + path.string() + "' does not exist");
  }
}

void EnsureParentDir(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

json MetricsJson(const MetricsReport& r) { return json::parse(ToJson(r)); }

PipelineConfig LoadConfig(const CommonOptions& common) {
  if (!common.config) return {};
  return LoadPipelineConfig(*common.config);
}

template <typename G>
G MaybeCrop(const G& grid, bool crop) {
  if (!crop) return grid;
  return BottomCenterCrop(grid, kCropWidth, kCropHeight).grid;
}

// Pairs of (name, path). A directory yields its *.png files sorted by name;
// a single file yields itself.
std::vector<std::pair<std::string, fs::path>> ListPngs(const fs::path& path,
                                                       const char* what) {
  RequireExisting(path, what);
  std::vector<std::pair<std::string, fs::path>> out;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") {
        out.emplace_back(entry.path().filename().string(), entry.path());
      }
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) {
      throw IoError(std::string(what) + " '" + path.string() +
                    "' contains no PNG files");
    }
  } else {
    out.emplace_back(path.filename().string(), path);
  }
  return out;
}

struct Triple {
  std::string name;
  fs::path gt;
  fs::path a;
  fs::path b;
};

// Matches predictions to ground truth by file name. A lone file on either
// side pairs with a lone file on the other.
fs::path Counterpart(const fs::path& side, const std::string& name, size_t count,
                     const char* what) {
  if (!fs::is_directory(side)) {
    if (count != 1) {
      throw DimensionError(std::string(what) + " '" + side.string() +
                           "' is a single file but ground truth has " +
                           std::to_string(count) + " frames");
    }
    return side;
  }
  const fs::path p = side / name;
  RequireFile(p, what);
  return p;
}

std::string FormatPose(const RigidTransform& pose) {
  const Eigen::Matrix4d m = pose.Matrix();
  std::ostringstream out;
  out.precision(17);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      out << m(r, c) << (r == 2 && c == 3 ? "" : " ");
    }
  }
  return out.str();
}

json PoseJson(const RigidTransform& pose) {
  const Eigen::Matrix4d m = pose.Matrix();
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  }
  return rows;
}

RigidTransform ReadPoseLine(const fs::path& path, int line_index) {
  RequireFile(path, "pose file");
  std::ifstream in(path);
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (seen++ < line_index) continue;
    std::istringstream fields(line);
    std::vector<double> v;
    double x = 0.0;
    while (fields >> x) v.push_back(x);
    if (!fields.eof() || (v.size() != 12 && v.size() != 16)) {
      throw FormatError("pose file '" + path.string() + "' line " +
                        std::to_string(line_index) +
                        ": expected 12 or 16 numbers");
    }
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    for (int i = 0; i < static_cast<int>(v.size()); ++i) m(i / 4, i % 4) = v[i];
    return RigidTransform::FromMatrix(m);
  }
  throw FormatError("pose file '" + path.string() + "' has no line " +
                    std::to_string(line_index));
}

std::vector<RigidTransform> RelativePoses(const std::vector<OxtsRecord>& records,
                                          const CalibBundle& calib) {
  if (records.size() < 2) {
    throw DomainError("poses: need at least two OXTS records");
  }
  const double lat0 = records.front().lat;
  std::vector<RigidTransform> world;
  world.reserve(records.size());
  for (const OxtsRecord& r : records) world.push_back(OxtsToWorldPose(r, lat0));
  std::vector<RigidTransform> rel;
  for (size_t i = 0; i + 1 < world.size(); ++i) {
    rel.push_back(RelativeCameraPose(world[i], world[i + 1], calib));
  }
  return rel;
}

void Emit(const std::string& text, const std::optional<fs::path>& out) {
  if (out) {
    EnsureParentDir(*out);
    std::ofstream f(*out);
    if (!f) throw IoError("cannot write '" + out->string() + "'");
    f << text;
    if (!f) throw IoError("cannot write '" + out->string() + "'");
  } else {
    std::cout << text;
  }
}

}  // namespace

void RunSynth(const SynthOptions& opt, const CommonOptions& common) {
  synth::SyntheticSequence seq;
  synth::SceneSpec scene;
  if (opt.scene) {
    RequireFile(*opt.scene, "scene file");
    synth::SceneFile file = synth::ReadSceneFile(*opt.scene);
    if (opt.frames) {
      if (static_cast<size_t>(*opt.frames) > file.trajectory.poses.size()) {
        throw DomainError("scene file '" + opt.scene->string() + "' has only " +
                          std::to_string(file.trajectory.poses.size()) +
                          " poses");
      }
      file.trajectory.poses.resize(static_cast<size_t>(*opt.frames));
    }
    if (opt.seed) file.pattern.seed = *opt.seed;
    scene = file.scene;
    seq = synth::MakeSequence(file.scene, file.trajectory, file.intrinsics,
                              file.pattern);
  } else {
    const int frames = opt.frames.value_or(5);
    if (!opt.seed) {
      seq = synth::MakeStreetSequence(opt.street, frames);
    } else {
      // Same drive as MakeStreetSequence with a different lidar seed.
      const RigidTransform start = RigidTransform::FromRotationTranslation(
          synth::CameraLookingAlongX(), Eigen::Vector3d(0.0, 0.0, 1.65));
      synth::LidarPattern pattern;
      pattern.seed = *opt.seed;
      seq = synth::MakeSequence(
          synth::MakeStreetScene(static_cast<uint64_t>(opt.street) + 1),
          synth::MakeDriveTrajectory(
              start, frames, 1.0, 0.0,
              synth::PitchOscillation{0.2 * std::numbers::pi / 180.0, 6.0,
                                      static_cast<double>(opt.street)}),
          synth::KittiCropIntrinsics(), pattern);
    }
    scene = synth::MakeStreetScene(static_cast<uint64_t>(opt.street) + 1);
  }
  fs::create_directories(opt.out);
  const fs::path manifest =
      synth::WriteKittiLayout(opt.out, scene, seq, opt.velodyne);
  const Intrinsics& k = seq.sequence.intrinsics;
  if (common.json) {
    std::cout << json{{"manifest", manifest.string()},
                      {"frames", seq.sequence.frames.size()},
                      {"width", k.width},
                      {"height", k.height}}
                     .dump()
              << "\n";
  } else {
    std::printf("wrote %zu frames (%dx%d) to %s\n", seq.sequence.frames.size(),
                k.width, k.height, manifest.string().c_str());
  }
}

void RunPoses(const PosesOptions& opt, const CommonOptions& common) {
  std::vector<OxtsRecord> records;
  std::optional<CalibBundle> calib;
  if (opt.manifest) {
    if (!opt.oxts.empty()) {
      throw DomainError("poses: give either a manifest or --oxts, not both");
    }
    RequireFile(*opt.manifest, "manifest");
    const SequenceIndex index = ReadSequenceIndex(*opt.manifest);
    for (const SequenceIndex::Entry& e : index.frames) {
      if (!e.oxts) {
        throw FormatError("manifest '" + opt.manifest->string() + "' frame " +
                          e.name + " has no OXTS record");
      }
      records.push_back(*e.oxts);
    }
    if (opt.calib) {
      RequireExisting(*opt.calib, "calibration directory");
      calib = LoadCalibBundle(*opt.calib, opt.camera);
    } else if (index.calib_dir) {
      calib = LoadCalibBundle(index.Resolve(*index.calib_dir), index.camera);
    } else if (index.intrinsics) {
      calib = CalibBundle::Identity(*index.intrinsics);
    }
  } else {
    if (opt.oxts.empty()) throw DomainError("poses: no manifest and no --oxts");
    for (const fs::path& p : opt.oxts) RequireFile(p, "OXTS file");
    if (!opt.calib) throw DomainError("poses: --oxts needs --calib");
    RequireExisting(*opt.calib, "calibration directory");
    for (const fs::path& p : opt.oxts) records.push_back(ReadOxtsFile(p));
    calib = LoadCalibBundle(*opt.calib, opt.camera);
  }
  if (!calib) throw FormatError("poses: no calibration available");
  const std::vector<RigidTransform> rel = RelativePoses(records, *calib);
  std::string text;
  if (common.json) {
    json doc = {{"poses", json::array()}};
    for (const RigidTransform& p : rel) doc["poses"].push_back(PoseJson(p));
    text = doc.dump() + "\n";
  } else {
    for (const RigidTransform& p : rel) text += FormatPose(p) + "\n";
  }
  Emit(text, opt.out);
}

void RunWarp(const WarpOptions& opt, const CommonOptions& common) {
  RequireFile(opt.depth, "depth PNG");
  if (!opt.pose && opt.oxts.empty()) {
    throw DomainError("warp: need --pose or --oxts");
  }
  if (opt.calib) RequireExisting(*opt.calib, "calibration directory");
  if (opt.pose) RequireFile(*opt.pose, "pose file");
  for (const fs::path& p : opt.oxts) RequireFile(p, "OXTS file");

  DepthMap depth = ReadDepthPng(opt.depth);
  CalibBundle calib;
  if (opt.calib) {
    calib = LoadCalibBundle(*opt.calib, opt.camera);
  } else if (opt.intrinsics.size() == 4) {
    calib = CalibBundle::Identity(
        {opt.intrinsics[0], opt.intrinsics[1], opt.intrinsics[2],
         opt.intrinsics[3], depth.width(), depth.height()});
  } else {
    throw DomainError("warp: need --calib or --intrinsics");
  }
  Intrinsics k = calib.intrinsics;
  k.width = depth.width();
  k.height = depth.height();
  if (common.crop) {
    const auto cropped = BottomCenterCrop(depth, kCropWidth, kCropHeight);
    depth = cropped.grid;
    k = cropped.window.Apply(k);
  }
  k.Validate();

  RigidTransform pose;
  if (opt.pose) {
    pose = ReadPoseLine(*opt.pose, opt.pose_line);
  } else {
    pose = RelativePoses({ReadOxtsFile(opt.oxts[0]), ReadOxtsFile(opt.oxts[1])},
                         calib)
               .front();
  }
  const WarpResult w = WarpDepth(depth, k, pose);
  EnsureParentDir(opt.out);
  WriteDepthPng(opt.out, w.depth);
  if (common.json) {
    std::cout << json{{"output", opt.out.string()},
                      {"valid_in", depth.ValidCount()},
                      {"valid_out", w.depth.ValidCount()},
                      {"pose", PoseJson(pose)}}
                     .dump()
              << "\n";
  } else {
    std::printf("warped %zu -> %zu valid pixels into %s\n", depth.ValidCount(),
                w.depth.ValidCount(), opt.out.string().c_str());
  }
}

void RunComplete(const CompleteOptions& opt, const CommonOptions& common) {
  RequireFile(opt.manifest, "manifest");
  if (common.config) RequireFile(*common.config, "config");
  const PipelineConfig cfg = LoadConfig(common);
  Sequence seq = LoadSequence(ReadSequenceIndex(opt.manifest));
  if (common.crop) seq = CropSequence(seq, kCropWidth, kCropHeight);
  if (opt.temporal && !seq.HasPoses()) {
    throw DomainError("manifest '" + opt.manifest.string() +
                      "' has no OXTS poses; --temporal needs them");
  }
  const SequenceResult result = RunSequence(seq, cfg, opt.temporal);

  fs::create_directories(opt.out);
  json doc = {{"manifest", fs::absolute(opt.manifest).string()},
              {"temporal", opt.temporal},
              {"frames", json::array()}};
  std::vector<MetricsReport> reports;
  std::vector<std::pair<std::string, MetricsReport>> rows;
  // PNG encoding is independent per frame.
  ParallelFor(
      seq.frames.size(),
      [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
          WriteDepthPng(opt.out / (seq.frames[i].name + ".png"),
                        result.frames[i].prediction);
        }
      },
      1);
  for (size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    const FrameResult& r = result.frames[i];
    json frame = {{"index", f.index},
                  {"name", f.name},
                  {"prediction", f.name + ".png"},
                  {"seed_density", r.seed_density},
                  {"metrics", nullptr}};
    if (r.metrics) {
      frame["metrics"] = MetricsJson(*r.metrics);
      reports.push_back(*r.metrics);
      rows.emplace_back(f.name, *r.metrics);
    }
    doc["frames"].push_back(std::move(frame));
  }
  doc["mean"] = nullptr;
  if (!reports.empty()) {
    const MetricsReport mean = AverageReports(reports);
    doc["mean"] = MetricsJson(mean);
    rows.emplace_back("mean", mean);
  }
  const fs::path metrics_path = opt.out / "metrics.json";
  {
    std::ofstream f(metrics_path);
    if (!f) throw IoError("cannot write '" + metrics_path.string() + "'");
    f << doc.dump(2) << "\n";
  }
  if (common.json) {
    std::cout << doc.dump() << "\n";
  } else {
    std::printf("%s mode, %zu frames -> %s\n",
                opt.temporal ? "temporal" : "single-frame", seq.frames.size(),
                opt.out.string().c_str());
    if (!rows.empty()) std::cout << FormatMetricsTable(rows);
  }
}

void RunEval(const EvalOptions& opt, const CommonOptions& common) {
  RequireExisting(opt.pred, "prediction path");
  const auto gts = ListPngs(opt.gt, "ground truth");
  std::vector<fs::path> preds;
  for (const auto& [name, _] : gts) {
    preds.push_back(Counterpart(opt.pred, name, gts.size(), "prediction"));
  }
  std::vector<MetricsReport> reports(gts.size());
  ParallelFor(
      gts.size(),
      [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
          const DepthMap gt = MaybeCrop(ReadDepthPng(gts[i].second), common.crop);
          const DepthMap pred = MaybeCrop(ReadDepthPng(preds[i]), common.crop);
          try {
            reports[i] = ComputeMetrics(pred, gt);
          } catch (const std::exception& e) {
            throw DomainError("'" + preds[i].string() + "': " + e.what());
          }
        }
      },
      1);
  const MetricsReport mean = AverageReports(reports);
  if (common.json) {
    json doc = {{"frames", json::array()}, {"mean", MetricsJson(mean)}};
    for (size_t i = 0; i < gts.size(); ++i) {
      doc["frames"].push_back(
          {{"name", gts[i].first}, {"metrics", MetricsJson(reports[i])}});
    }
    std::cout << doc.dump() << "\n";
  } else {
    std::vector<std::pair<std::string, MetricsReport>> rows;
    for (size_t i = 0; i < gts.size(); ++i) {
      rows.emplace_back(fs::path(gts[i].first).stem().string(), reports[i]);
    }
    rows.emplace_back("mean", mean);
    std::cout << FormatMetricsTable(rows);
  }
}

void RunDiffmap(const DiffmapOptions& opt, const CommonOptions& common) {
  RequireExisting(opt.pred_a, "prediction A");
  RequireExisting(opt.pred_b, "prediction B");
  const auto gts = ListPngs(opt.gt, "ground truth");
  std::vector<Triple> triples;
  for (const auto& [name, path] : gts) {
    triples.push_back({name, path,
                       Counterpart(opt.pred_a, name, gts.size(), "prediction A"),
                       Counterpart(opt.pred_b, name, gts.size(), "prediction B")});
  }
  BlockDiffAccumulator acc;
  int width = 0;
  int height = 0;
  for (const Triple& t : triples) {
    const DepthMap gt = MaybeCrop(ReadDepthPng(t.gt), common.crop);
    const DepthMap a = MaybeCrop(ReadDepthPng(t.a), common.crop);
    const DepthMap b = MaybeCrop(ReadDepthPng(t.b), common.crop);
    acc.Add(BlockErrorDiff(a, b, gt, opt.block));
    width = gt.width();
    height = gt.height();
  }
  const BlockDiffMap mean = acc.Mean();
  EnsureParentDir(opt.out);
  WriteRgbPng(opt.out, RenderBlockDiff(mean, width, height, opt.range));

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  size_t valid = 0;
  for (const std::optional<double>& d : mean.diff.values()) {
    if (!d) continue;
    lo = std::min(lo, *d);
    hi = std::max(hi, *d);
    sum += *d;
    ++valid;
  }
  if (common.json) {
    json doc = {{"output", opt.out.string()},
                {"frames", acc.frames()},
                {"block", opt.block},
                {"blocks_x", mean.diff.width()},
                {"blocks_y", mean.diff.height()},
                {"valid_blocks", valid},
                {"mean_mm", nullptr},
                {"min_mm", nullptr},
                {"max_mm", nullptr}};
    if (valid > 0) {
      doc["mean_mm"] = sum / static_cast<double>(valid);
      doc["min_mm"] = lo;
      doc["max_mm"] = hi;
    }
    std::cout << doc.dump() << "\n";
  } else {
    std::printf("%d frames, %zu blocks of %dx%d", acc.frames(), valid, opt.block,
                opt.block);
    if (valid > 0) {
      std::printf(", mean %.3f mm, range [%.3f, %.3f] mm", sum / valid, lo, hi);
    }
    std::printf(" -> %s\n", opt.out.string().c_str());
  }
}

void RunCurve(const CurveOptions& opt, const CommonOptions& common) {
  for (const fs::path& p : opt.results) RequireFile(p, "results file");
  std::vector<std::vector<double>> per_sequence;
  for (const fs::path& p : opt.results) {
    std::ifstream in(p);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError("'" + p.string() + "': " + e.what());
    }
    std::vector<double> rmse;
    try {
      for (const json& frame : doc.at("frames")) {
        if (frame.at("metrics").is_null()) {
          throw FormatError("'" + p.string() + "' frame " +
                            frame.value("name", std::string("?")) +
                            " has no metrics");
        }
        rmse.push_back(frame.at("metrics").at("rmse_mm").get<double>());
      }
    } catch (const json::exception& e) {
      throw FormatError("'" + p.string() + "': " + e.what());
    }
    per_sequence.push_back(std::move(rmse));
  }
  const auto curve = PerFrameRmse(per_sequence);
  std::string text;
  if (common.json) {
    json doc = {{"curve", json::array()}};
    for (const auto& [frame, rmse] : curve) {
      doc["curve"].push_back({{"frame", frame}, {"rmse_mm", rmse}});
    }
    text = doc.dump() + "\n";
  } else {
    text = PerFrameRmseCsv(curve);
  }
  Emit(text, opt.out);
}

}  // namespace tdc::cli
