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

#ifndef TDC_METRICS_H_
#define TDC_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdc/grid.h"

namespace tdc {

// KITTI depth-completion metrics over pixels with valid ground truth.
struct MetricsReport {
  double rmse = 0.0;   // mm
  double mae = 0.0;    // mm
  double irmse = 0.0;  // 1/km
  double imae = 0.0;   // 1/km
  size_t valid_count = 0;
};

// Throws DomainError when gt has no valid pixel or pred is
// not positive at a valid gt pixel; DimensionError on shape mismatch.
MetricsReport ComputeMetrics(const DepthMap& pred, const DepthMap& gt);

// Per-frame mean of each metric (the benchmark's aggregation); valid_count
// is the total. Throws DomainError on an empty list.
MetricsReport AverageReports(std::span<const MetricsReport> reports);

std::string ToJson(const MetricsReport& report);

// Aligned text table, one row per (label, report).
std::string FormatMetricsTable(
    const std::vector<std::pair<std::string, MetricsReport>>& rows);

}  // namespace tdc

#endif  // TDC_METRICS_H_
