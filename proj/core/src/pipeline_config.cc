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

#include "tdc/pipeline_config.h"

#include <cmath>

#include <toml.hpp>

#include "tdc/errors.h"

namespace tdc {
namespace {

PipelineConfig FromTable(const toml::table& root) {
  const toml::table* table = root["pipeline"].as_table();
  if (table == nullptr) table = &root;
  const toml::node_view<const toml::node> t{table};

  PipelineConfig cfg;
  if (auto mode = t["fuse_mode"].value<std::string>()) {
    cfg.fuse_mode = ParseFuseMode(*mode);
  }
  auto read_int = [&](const char* key, int* dst) {
    if (!t[key]) return;
    auto v = t[key].value<int64_t>();
    if (!v) throw FormatError(std::string("config: '") + key + "' must be an integer");
    *dst = static_cast<int>(*v);
  };
  auto read_real = [&](const char* key, double* dst) {
    if (!t[key]) return;
    auto v = t[key].value<double>();
    if (!v) throw FormatError(std::string("config: '") + key + "' must be a number");
    *dst = *v;
  };
  read_int("fill_radius", &cfg.fill_radius);
  read_int("refine_iterations", &cfg.refine_iterations);
  read_real("affinity_bandwidth", &cfg.affinity_bandwidth);
  read_real("confidence_decay", &cfg.confidence_decay);
  read_real("min_confidence", &cfg.min_confidence);
  read_real("surface_margin", &cfg.surface_margin);
  cfg.Validate();
  return cfg;
}

}  // namespace

std::string_view ToString(FuseMode mode) {
  switch (mode) {
    case FuseMode::kSparseOverrides:
      return "sparse-overrides";
    case FuseMode::kConfidenceBlend:
      return "confidence-blend";
  }
  return "unknown";
}

FuseMode ParseFuseMode(std::string_view text) {
  if (text == "sparse-overrides") return FuseMode::kSparseOverrides;
  if (text == "confidence-blend") return FuseMode::kConfidenceBlend;
  throw FormatError("unknown fuse mode '" + std::string(text) + "'");
}

void PipelineConfig::Validate() const {
  if (fill_radius < 1) throw DomainError("config: fill_radius must be >= 1");
  if (refine_iterations < 0) {
    throw DomainError("config: refine_iterations must be >= 0");
  }
  if (!(affinity_bandwidth > 0.0) || !std::isfinite(affinity_bandwidth)) {
    throw DomainError("config: affinity_bandwidth must be positive");
  }
  if (!(confidence_decay > 0.0 && confidence_decay <= 1.0)) {
    throw DomainError("config: confidence_decay must lie in (0, 1]");
  }
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw DomainError("config: min_confidence must lie in [0, 1]");
  }
  if (!(surface_margin > 0.0) || !std::isfinite(surface_margin)) {
    throw DomainError("config: surface_margin must be positive");
  }
}

PipelineConfig ParsePipelineConfig(std::string_view toml_text) {
  try {
    return FromTable(toml::parse(toml_text));
  } catch (const toml::parse_error& e) {
    throw FormatError(std::string("config: ") + std::string(e.description()));
  }
}

PipelineConfig LoadPipelineConfig(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError("cannot open config '" + path.string() + "'");
  }
  try {
    return FromTable(toml::parse_file(path.string()));
  } catch (const toml::parse_error& e) {
    throw FormatError(path.string() + ": " + std::string(e.description()));
  }
}

}  // namespace tdc
