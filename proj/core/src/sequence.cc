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

#include "tdc/sequence.h"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "tdc/errors.h"
#include "tdc/png_io.h"

namespace tdc {
namespace {

using nlohmann::json;

constexpr const char* kFormatTag = "tdc-sequence";
constexpr int kFormatVersion = 1;

std::optional<std::filesystem::path> OptionalPath(const json& j,
                                                  const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return std::filesystem::path(j.at(key).get<std::string>());
}

}  // namespace

void SequenceIndex::Validate() const {
  if (frames.empty()) throw FormatError("sequence manifest lists no frames");
  for (size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].index <= frames[i - 1].index) {
      throw FormatError("sequence manifest: frame indices must increase (" +
                        std::to_string(frames[i - 1].index) + " then " +
                        std::to_string(frames[i].index) + ")");
    }
  }
  auto require = [&](const std::filesystem::path& p) {
    if (!std::filesystem::exists(Resolve(p))) {
      throw IoError("sequence manifest: missing file '" + Resolve(p).string() +
                    "'");
    }
  };
  for (const Entry& e : frames) {
    require(e.sparse);
    if (e.groundtruth) require(*e.groundtruth);
    if (e.image) require(*e.image);
  }
  if (calib_dir) {
    for (const char* name : {"calib_cam_to_cam.txt", "calib_velo_to_cam.txt",
                             "calib_imu_to_velo.txt"}) {
      require(*calib_dir / name);
    }
  }
}

SequenceIndex ReadSequenceIndex(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open '" + manifest.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }

  SequenceIndex index;
  index.base_dir = manifest.parent_path();
  try {
    if (doc.value("format", std::string()) != kFormatTag) {
      throw FormatError(manifest.string() + ": not a " + kFormatTag +
                        " manifest");
    }
    if (doc.contains("calibration")) {
      const json& c = doc.at("calibration");
      index.calib_dir = std::filesystem::path(c.at("dir").get<std::string>());
      index.camera = c.value("camera", 2);
    }
    if (doc.contains("intrinsics")) {
      const json& k = doc.at("intrinsics");
      Intrinsics intr{k.at("fx").get<double>(), k.at("fy").get<double>(),
                      k.at("cx").get<double>(), k.at("cy").get<double>(),
                      k.at("width").get<int>(),  k.at("height").get<int>()};
      intr.Validate();
      index.intrinsics = intr;
    }
    for (const json& f : doc.at("frames")) {
      SequenceIndex::Entry e;
      e.index = f.at("index").get<int>();
      e.name = f.value("name", std::to_string(e.index));
      e.sparse = f.at("sparse").get<std::string>();
      e.groundtruth = OptionalPath(f, "groundtruth");
      e.image = OptionalPath(f, "image");
      if (f.contains("oxts") && !f.at("oxts").is_null()) {
        e.oxts = ParseOxtsLine(f.at("oxts").get<std::string>());
      }
      index.frames.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
  index.Validate();
  return index;
}

void WriteSequenceIndex(const std::filesystem::path& manifest,
                        const SequenceIndex& index) {
  json doc;
  doc["format"] = kFormatTag;
  doc["version"] = kFormatVersion;
  if (index.calib_dir) {
    doc["calibration"] = {{"dir", index.calib_dir->generic_string()},
                          {"camera", index.camera}};
  }
  if (index.intrinsics) {
    const Intrinsics& k = *index.intrinsics;
    doc["intrinsics"] = {{"fx", k.fx},       {"fy", k.fy},
                         {"cx", k.cx},       {"cy", k.cy},
                         {"width", k.width}, {"height", k.height}};
  }
  json frames = json::array();
  for (const SequenceIndex::Entry& e : index.frames) {
    json f;
    f["index"] = e.index;
    f["name"] = e.name;
    f["sparse"] = e.sparse.generic_string();
    f["groundtruth"] =
        e.groundtruth ? json(e.groundtruth->generic_string()) : json(nullptr);
    f["image"] = e.image ? json(e.image->generic_string()) : json(nullptr);
    f["oxts"] = e.oxts ? json(FormatOxtsLine(*e.oxts)) : json(nullptr);
    frames.push_back(std::move(f));
  }
  doc["frames"] = std::move(frames);
  std::ofstream out(manifest);
  if (!out) throw IoError("cannot write '" + manifest.string() + "'");
  out << doc.dump(2) << "\n";
}

Sequence LoadSequence(const SequenceIndex& index) {
  index.Validate();
  Sequence seq;
  for (const SequenceIndex::Entry& e : index.frames) {
    Frame frame;
    frame.index = e.index;
    frame.name = e.name;
    frame.sparse = ReadDepthPng(index.Resolve(e.sparse));
    if (e.groundtruth) {
      frame.groundtruth = ReadDepthPng(index.Resolve(*e.groundtruth));
      RequireSameShape(frame.sparse, *frame.groundtruth, "groundtruth");
    }
    if (e.image) {
      frame.image = ReadGrayPng(index.Resolve(*e.image));
      RequireSameShape(frame.sparse, *frame.image, "image");
    }
    if (!seq.frames.empty()) {
      RequireSameShape(seq.frames.front().sparse, frame.sparse, "sparse depth");
    }
    seq.frames.push_back(std::move(frame));
  }

  std::optional<CalibBundle> calib;
  if (index.calib_dir) {
    calib = LoadCalibBundle(index.Resolve(*index.calib_dir), index.camera);
  } else if (index.intrinsics) {
    calib = CalibBundle::Identity(*index.intrinsics);
  } else {
    throw FormatError("sequence manifest has neither calibration nor intrinsics");
  }
  // Depth maps may differ from the nominal rectified size by a few pixels;
  // the grid size wins.
  seq.intrinsics = calib->intrinsics;
  seq.intrinsics.width = seq.frames.front().sparse.width();
  seq.intrinsics.height = seq.frames.front().sparse.height();
  seq.intrinsics.Validate();

  const bool all_oxts =
      std::all_of(index.frames.begin(), index.frames.end(),
                  [](const SequenceIndex::Entry& e) { return e.oxts.has_value(); });
  if (all_oxts) {
    const double lat0 = index.frames.front().oxts->lat;
    std::vector<RigidTransform> world;
    world.reserve(index.frames.size());
    for (const SequenceIndex::Entry& e : index.frames) {
      world.push_back(OxtsToWorldPose(*e.oxts, lat0));
    }
    for (size_t i = 0; i + 1 < world.size(); ++i) {
      seq.relative_poses.push_back(
          RelativeCameraPose(world[i], world[i + 1], *calib));
    }
  }
  return seq;
}

Sequence CropSequence(const Sequence& seq, int out_width, int out_height) {
  const CropWindow window = BottomCenterWindow(
      seq.intrinsics.width, seq.intrinsics.height, out_width, out_height);
  Sequence out;
  out.intrinsics = window.Apply(seq.intrinsics);
  out.relative_poses = seq.relative_poses;
  for (const Frame& f : seq.frames) {
    Frame c;
    c.index = f.index;
    c.name = f.name;
    c.sparse = CropGrid(f.sparse, window);
    if (f.groundtruth) c.groundtruth = CropGrid(*f.groundtruth, window);
    if (f.image) c.image = CropGrid(*f.image, window);
    out.frames.push_back(std::move(c));
  }
  return out;
}

}  // namespace tdc
