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

#ifndef TDC_TURBO_H_
#define TDC_TURBO_H_

#include "tdc/png_io.h"

namespace tdc {

// Turbo colormap. `x` is clamped to [0, 1]; the 256-entry reference table
// is interpolated linearly.
Rgb TurboColormap(double x);

}  // namespace tdc

#endif  // TDC_TURBO_H_
