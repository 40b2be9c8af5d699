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

#include "tdc/turbo.h"

#include <algorithm>
#include <cmath>

namespace tdc {
namespace {
#include "turbo_table.inc"
}  // namespace

Rgb TurboColormap(double x) {
  if (std::isnan(x)) x = 0.0;
  x = std::clamp(x, 0.0, 1.0);
  const double pos = x * 255.0;
  const int lo = static_cast<int>(std::floor(pos));
  const int hi = std::min(lo + 1, 255);
  const double t = pos - lo;
  Rgb out{};
  for (int c = 0; c < 3; ++c) {
    const double v = (1.0 - t) * kTurboTable[lo][c] + t * kTurboTable[hi][c];
    out[static_cast<size_t>(c)] =
        static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  }
  return out;
}

}  // namespace tdc
