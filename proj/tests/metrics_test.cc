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
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "tdc/errors.h"

namespace tdc {
namespace {

void ExpectRel(double got, double want) {
  EXPECT_LE(std::abs(got - want), 1e-9 * std::abs(want)) << got << " vs " << want;
}

TEST(MetricsTest, SinglePixelHandCase) {
  const MetricsReport r = ComputeMetrics(DepthMap(1, 1, 11.0), DepthMap(1, 1, 10.0));
  ExpectRel(r.rmse, 1000.0);
  ExpectRel(r.mae, 1000.0);
  ExpectRel(r.irmse, 1000.0 * (1.0 / 10.0 - 1.0 / 11.0));
  ExpectRel(r.irmse, 9.0909090909);
  EXPECT_EQ(r.valid_count, 1u);
}

TEST(MetricsTest, SymmetricErrorsHandCase) {
  DepthMap gt(2, 1, 10.0);
  DepthMap pred(2, 1, 0.0);
  pred(0, 0) = 11.0;
  pred(1, 0) = 9.0;
  const MetricsReport r = ComputeMetrics(pred, gt);
  ExpectRel(r.mae, 1000.0);
  ExpectRel(r.rmse, 1000.0);
}

TEST(MetricsTest, InvalidGroundTruthIgnored) {
  DepthMap gt(3, 1, 0.0);
  gt(1, 0) = 5.0;
  DepthMap pred(3, 1, 100.0);
  pred(1, 0) = 5.5;
  const MetricsReport r = ComputeMetrics(pred, gt);
  EXPECT_EQ(r.valid_count, 1u);
  ExpectRel(r.rmse, 500.0);
}

TEST(MetricsTest, RmseAtLeastMaeOnRandomMaps) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> depth(0.5, 80.0);
  std::normal_distribution<double> noise(0.0, 2.0);
  std::bernoulli_distribution valid(0.3);
  for (int t = 0; t < 1000; ++t) {
    DepthMap gt(16, 8, 0.0);
    DepthMap pred(16, 8, 0.0);
    for (size_t i = 0; i < gt.size(); ++i) {
      if (valid(rng) || i == 0) gt[i] = depth(rng);
      pred[i] = std::max(0.1, (gt[i] > 0 ? gt[i] : depth(rng)) + noise(rng));
    }
    const MetricsReport r = ComputeMetrics(pred, gt);
    EXPECT_GE(r.rmse, r.mae * (1.0 - 1e-12));
    EXPECT_GE(r.irmse, r.imae * (1.0 - 1e-12));
  }
}

TEST(MetricsTest, PermutationInvariant) {
  DepthMap gt(4, 1, 0.0);
  DepthMap pred(4, 1, 0.0);
  const double g[] = {3.0, 7.0, 12.0, 40.0};
  const double p[] = {3.5, 6.0, 12.25, 38.0};
  for (int i = 0; i < 4; ++i) {
    gt(i, 0) = g[i];
    pred(i, 0) = p[i];
  }
  DepthMap gt2(4, 1, 0.0);
  DepthMap pred2(4, 1, 0.0);
  for (int i = 0; i < 4; ++i) {
    gt2(3 - i, 0) = g[i];
    pred2(3 - i, 0) = p[i];
  }
  const MetricsReport a = ComputeMetrics(pred, gt);
  const MetricsReport b = ComputeMetrics(pred2, gt2);
  ExpectRel(a.rmse, b.rmse);
  ExpectRel(a.imae, b.imae);
}

TEST(MetricsTest, Errors) {
  EXPECT_THROW(ComputeMetrics(DepthMap(2, 2, 1.0), DepthMap(2, 3, 1.0)),
               DimensionError);
  EXPECT_THROW(ComputeMetrics(DepthMap(2, 2, 1.0), DepthMap(2, 2, 0.0)),
               DomainError);
  // Hole in the prediction where ground truth exists.
  EXPECT_THROW(ComputeMetrics(DepthMap(2, 2, 0.0), DepthMap(2, 2, 1.0)),
               DomainError);
  EXPECT_THROW(AverageReports({}), DomainError);
}

TEST(MetricsTest, AverageAndJson) {
  const std::vector<MetricsReport> rs = {{700, 300, 2, 1, 10}, {800, 500, 4, 3, 30}};
  const MetricsReport m = AverageReports(rs);
  EXPECT_DOUBLE_EQ(m.rmse, 750.0);
  EXPECT_DOUBLE_EQ(m.mae, 400.0);
  EXPECT_DOUBLE_EQ(m.irmse, 3.0);
  EXPECT_EQ(m.valid_count, 40u);
  const auto j = nlohmann::json::parse(ToJson(m));
  EXPECT_DOUBLE_EQ(j.at("rmse_mm").get<double>(), 750.0);
  EXPECT_EQ(j.at("valid_count").get<size_t>(), 40u);
  const std::string table = FormatMetricsTable({{"0001", rs[0]}, {"mean", m}});
  EXPECT_NE(table.find("RMSE[mm]"), std::string::npos);
  EXPECT_NE(table.find("750.000"), std::string::npos);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
}

}  // namespace
}  // namespace tdc
