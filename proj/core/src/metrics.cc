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

#include "tdc/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tdc/errors.h"

namespace tdc {

MetricsReport ComputeMetrics(const DepthMap& pred, const DepthMap& gt) {
  RequireSameShape(pred, gt, "metrics");
  double sq = 0.0;
  double abs = 0.0;
  double isq = 0.0;
  double iabs = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < gt.size(); ++i) {
    const double g = gt[i];
    if (!(g > 0.0)) continue;
    const double p = pred[i];
    if (!(p > 0.0)) {
      throw DomainError("metrics: prediction is empty at pixel " +
                        std::to_string(i) + " where ground truth is valid");
    }
    const double e = p - g;
    const double ie = 1.0 / p - 1.0 / g;
    sq += e * e;
    abs += std::abs(e);
    isq += ie * ie;
    iabs += std::abs(ie);
    ++n;
  }
  if (n == 0) throw DomainError("metrics: ground truth has no valid pixel");
  const double count = static_cast<double>(n);
  // Depths are in meters: errors scale to mm and inverse errors to 1/km.
  return {1000.0 * std::sqrt(sq / count), 1000.0 * abs / count,
          1000.0 * std::sqrt(isq / count), 1000.0 * iabs / count, n};
}

MetricsReport AverageReports(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw DomainError("metrics: nothing to average");
  MetricsReport mean;
  for (const MetricsReport& r : reports) {
    mean.rmse += r.rmse;
    mean.mae += r.mae;
    mean.irmse += r.irmse;
    mean.imae += r.imae;
    mean.valid_count += r.valid_count;
  }
  const double n = static_cast<double>(reports.size());
  mean.rmse /= n;
  mean.mae /= n;
  mean.irmse /= n;
  mean.imae /= n;
  return mean;
}

std::string ToJson(const MetricsReport& report) {
  nlohmann::json j = {{"rmse_mm", report.rmse},
                      {"mae_mm", report.mae},
                      {"irmse_1_per_km", report.irmse},
                      {"imae_1_per_km", report.imae},
                      {"valid_count", report.valid_count}};
  return j.dump();
}

std::string FormatMetricsTable(
    const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  size_t label_width = 5;
  for (const auto& [label, _] : rows) {
    label_width = std::max(label_width, label.size());
  }
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %12s %12s %12s %12s %12s\n",
                static_cast<int>(label_width), "frame", "RMSE[mm]", "MAE[mm]",
                "iRMSE[1/km]", "iMAE[1/km]", "valid");
  out << buf;
  for (const auto& [label, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s %12.3f %12.3f %12.4f %12.4f %12zu\n",
                  static_cast<int>(label_width), label.c_str(), r.rmse, r.mae,
                  r.irmse, r.imae, r.valid_count);
    out << buf;
  }
  return out.str();
}

}  // namespace tdc
