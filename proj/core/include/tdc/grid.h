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

#ifndef TDC_GRID_H_
#define TDC_GRID_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdc/errors.h"

namespace tdc {

// Row-major 2-D grid of values. Pixel (x, y) lives at index y * width + x.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw DimensionError("negative grid size");
    }
    data_.assign(static_cast<size_t>(width) * static_cast<size_t>(height),
                 fill);
  }
  Grid(int width, int height, std::vector<T> values)
      : width_(width), height_(height), data_(std::move(values)) {
    if (width < 0 || height < 0 ||
        data_.size() !=
            static_cast<size_t>(width) * static_cast<size_t>(height)) {
      throw DimensionError("grid value count does not match " +
                           std::to_string(width) + "x" +
                           std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * static_cast<size_t>(width_) +
           static_cast<size_t>(x);
  }
  bool Contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y) { return data_[Index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[Index(x, y)]; }
  T& operator[](size_t i) { return data_[i]; }
  const T& operator[](size_t i) const { return data_[i]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  std::span<T> row(int y) {
    return std::span<T>(data_).subspan(Index(0, y), width_);
  }
  std::span<const T> row(int y) const {
    return std::span<const T>(data_).subspan(Index(0, y), width_);
  }

  bool SameShape(int width, int height) const {
    return width_ == width && height_ == height;
  }
  template <typename U>
  bool SameShape(const Grid<U>& other) const {
    return SameShape(other.width(), other.height());
  }

  friend bool operator==(const Grid& a, const Grid& b) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

template <typename A, typename B>
void RequireSameShape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (!a.SameShape(b)) {
    throw DimensionError(std::string(what) + ": shape " +
                         std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " +
                         std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

// Depth in meters; 0 marks an invalid pixel. Values are finite and >= 0.
class DepthMap : public Grid<double> {
 public:
  using Grid<double>::Grid;
  DepthMap() = default;
  explicit DepthMap(Grid<double> g) : Grid<double>(std::move(g)) {}

  bool IsValid(int x, int y) const { return (*this)(x, y) > 0.0; }
  size_t ValidCount() const;
  // Fraction of all pixels holding a valid depth.
  double Density() const;
  // Throws DomainError on a negative or non-finite entry.
  void CheckInvariants() const;

  friend bool operator==(const DepthMap& a, const DepthMap& b) = default;
};

// Single-channel intensity image with values in [0, 1].
using GrayImage = Grid<double>;

// Per-pixel gradient with respect to a depth map.
using GradientMap = Grid<double>;

}  // namespace tdc

#endif  // TDC_GRID_H_
