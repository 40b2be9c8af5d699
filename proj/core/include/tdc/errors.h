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

#ifndef TDC_ERRORS_H_
#define TDC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tdc {

// Shapes of two grids, or of a grid and its intrinsics, disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A file exists but its content does not follow the expected layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value cannot be represented in the target encoding.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An input lies outside the domain of a mathematical mapping.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// I/O failure (missing file, unwritable path).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tdc

#endif  // TDC_ERRORS_H_
