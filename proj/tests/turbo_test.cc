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

#include <cstdlib>

#include <gtest/gtest.h>

namespace tdc {
namespace {

void ExpectClose(const Rgb& got, const Rgb& want, int tol) {
  for (int c = 0; c < 3; ++c) {
    EXPECT_LE(std::abs(int{got[c]} - int{want[c]}), tol) << "channel " << c;
  }
}

TEST(TurboTest, Endpoints) {
  ExpectClose(TurboColormap(0.0), {48, 18, 59}, 3);
  ExpectClose(TurboColormap(1.0), {122, 4, 3}, 3);
}

TEST(TurboTest, ClampsOutOfRange) {
  EXPECT_EQ(TurboColormap(-2.0), TurboColormap(0.0));
  EXPECT_EQ(TurboColormap(3.0), TurboColormap(1.0));
}

TEST(TurboTest, MidrangeIsGreenish) {
  const Rgb mid = TurboColormap(0.5);
  EXPECT_GT(mid[1], mid[0]);
  EXPECT_GT(mid[1], mid[2]);
}

TEST(TurboTest, RedRisesThroughMidrange) {
  int last = -1;
  for (int i = 0; i <= 30; ++i) {
    const int r = TurboColormap(0.4 + 0.01 * i)[0];
    EXPECT_GE(r, last);
    last = r;
  }
}

}  // namespace
}  // namespace tdc
