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

#ifndef TDC_BENCHMARKS_BENCH_DATA_H_
#define TDC_BENCHMARKS_BENCH_DATA_H_

#include "tdc/synth.h"

namespace tdc::bench {

// Built once per process; rendering dominates otherwise.
inline const synth::SyntheticSequence& Street() {
  static const synth::SyntheticSequence seq = synth::MakeStreetSequence(0, 3);
  return seq;
}

}  // namespace tdc::bench

#endif  // TDC_BENCHMARKS_BENCH_DATA_H_
