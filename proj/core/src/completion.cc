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

#include "tdc/completion.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>

#include "tdc/errors.h"
#include "tdc/parallel.h"
#include "tdc/warp.h"

namespace tdc {
namespace {

constexpr double kMinDonorWeight = 1e-6;
constexpr double kMinGuideWeight = 1e-6;

// Valid seed pixels bucketed into square cells for radius queries.
class DonorIndex {
 public:
  DonorIndex(const DepthMap& seed, int cell)
      : cell_(cell),
        cols_((seed.width() + cell - 1) / cell),
        rows_((seed.height() + cell - 1) / cell),
        buckets_(static_cast<size_t>(cols_) * rows_) {
    for (int y = 0; y < seed.height(); ++y) {
      for (int x = 0; x < seed.width(); ++x) {
        if (seed(x, y) > 0.0) {
          buckets_[Bucket(x / cell_, y / cell_)].push_back({x, y});
        }
      }
    }
  }

  // Calls fn(x, y) for every donor in the cells overlapping the square of
  // half-size `radius` around (px, py).
  template <typename Fn>
  void ForEachNear(int px, int py, int radius, Fn&& fn) const {
    const int cx0 = std::max(0, (px - radius) / cell_);
    const int cy0 = std::max(0, (py - radius) / cell_);
    const int cx1 = std::min(cols_ - 1, (px + radius) / cell_);
    const int cy1 = std::min(rows_ - 1, (py + radius) / cell_);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        for (const auto& [x, y] : buckets_[Bucket(cx, cy)]) fn(x, y);
      }
    }
  }

 private:
  size_t Bucket(int cx, int cy) const {
    return static_cast<size_t>(cy) * static_cast<size_t>(cols_) +
           static_cast<size_t>(cx);
  }

  int cell_;
  int cols_;
  int rows_;
  std::vector<std::vector<std::array<int, 2>>> buckets_;
};

}  // namespace

TemporalState TemporalState::Empty(int width, int height) {
  return {DepthMap(width, height, 0.0), Grid<double>(width, height, 0.0),
          Grid<double>(width, height, 0.0), Grid<double>(width, height, 0.0)};
}

void TemporalState::CheckInvariants() const {
  RequireSameShape(warped_prev, confidence, "temporal state");
  for (const Grid<double>* offset : {&offset_u, &offset_v}) {
    if (offset->empty()) continue;
    RequireSameShape(warped_prev, *offset, "temporal state");
    for (double o : offset->values()) {
      if (!(std::abs(o) <= 0.5)) {
        throw DomainError("temporal state: sub-pixel offset outside [-0.5, 0.5]");
      }
    }
  }
  for (size_t i = 0; i < confidence.size(); ++i) {
    const double c = confidence[i];
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DomainError("temporal state: confidence outside [0, 1]");
    }
    if ((c == 0.0) != (warped_prev[i] == 0.0)) {
      throw DomainError(
          "temporal state: confidence must vanish exactly where depth does");
    }
  }
}

FusedSeed FuseTemporal(const DepthMap& sparse, const TemporalState& state,
                       const PipelineConfig& cfg) {
  RequireSameShape(sparse, state.warped_prev, "fuse_temporal");
  RequireSameShape(sparse, state.confidence, "fuse_temporal");
  const int width = sparse.width();
  const int height = sparse.height();
  FusedSeed out{DepthMap(width, height, 0.0), Grid<double>(width, height, 0.0),
                Grid<double>(width, height, 0.0),
                Grid<double>(width, height, 0.0)};
  const bool has_offsets = !state.offset_u.empty() && !state.offset_v.empty();
  if (has_offsets) {
    RequireSameShape(sparse, state.offset_u, "fuse_temporal");
    RequireSameShape(sparse, state.offset_v, "fuse_temporal");
  }
  for (size_t i = 0; i < sparse.size(); ++i) {
    const double s = sparse[i];
    const double w = state.warped_prev[i];
    const double c = state.confidence[i];
    const bool has_history = w > 0.0 && c > 0.0 && c >= cfg.min_confidence;
    if (s > 0.0) {
      out.depth[i] = s;
      if (cfg.fuse_mode == FuseMode::kConfidenceBlend && has_history) {
        out.depth[i] = (s + c * w) / (1.0 + c);
      }
      out.weight[i] = 1.0;
    } else if (has_history) {
      out.depth[i] = w;
      out.weight[i] = c;
      if (has_offsets) {
        out.offset_u[i] = state.offset_u[i];
        out.offset_v[i] = state.offset_v[i];
      }
    }
  }
  return out;
}

DepthMap SpatialComplete(const DepthMap& seed, const Grid<double>& weight,
                         const PipelineConfig& cfg) {
  return SpatialComplete(seed, weight, nullptr, cfg);
}

DepthMap SpatialComplete(const DepthMap& seed, const Grid<double>& weight,
                         const GrayImage* guide, const PipelineConfig& cfg) {
  RequireSameShape(seed, weight, "spatial_complete");
  if (guide != nullptr) RequireSameShape(seed, *guide, "spatial_complete");
  const double inv_bw2 =
      1.0 / (cfg.affinity_bandwidth * cfg.affinity_bandwidth);
  if (seed.ValidCount() == 0) {
    throw DomainError("spatial_complete: seed has no valid pixel");
  }
  const int w = seed.width();
  const int h = seed.height();
  const DonorIndex donors(seed, std::max(1, cfg.fill_radius));
  const int max_radius = 2 * std::max(w, h);
  DepthMap out = seed;
  ParallelFor(
      static_cast<size_t>(h),
      [&](size_t begin, size_t end) {
        for (size_t yy = begin; yy < end; ++yy) {
          const int y = static_cast<int>(yy);
          for (int x = 0; x < w; ++x) {
            if (seed(x, y) > 0.0) continue;
            for (int r = cfg.fill_radius;; r *= 2) {
              const double r2 = static_cast<double>(r) * r;
              double num = 0.0;
              double den = 0.0;
              donors.ForEachNear(x, y, r, [&](int qx, int qy) {
                const double dx = qx - x;
                const double dy = qy - y;
                const double d2 = dx * dx + dy * dy;
                if (d2 > r2) return;
                double wq = std::max(weight(qx, qy), kMinDonorWeight) / d2;
                if (guide != nullptr) {
                  const double di = (*guide)(qx, qy) - (*guide)(x, y);
                  wq *= std::exp(-di * di * inv_bw2) + kMinGuideWeight;
                }
                num += wq * seed(qx, qy);
                den += wq;
              });
              if (den > 0.0) {
                out(x, y) = num / den;
                break;
              }
              if (r > max_radius) break;
            }
          }
        }
      },
      4);
  return out;
}

DepthMap CspnRefine(const DepthMap& coarse, const GrayImage& guide,
                    const DepthMap& anchors, const PipelineConfig& cfg) {
  RequireSameShape(coarse, guide, "cspn_refine");
  RequireSameShape(coarse, anchors, "cspn_refine");
  if (cfg.refine_iterations < 0) {
    throw DomainError("cspn_refine: negative iteration count");
  }
  if (cfg.refine_iterations == 0) return coarse;

  const int w = coarse.width();
  const int h = coarse.height();
  const double inv_bw2 = 1.0 / (cfg.affinity_bandwidth * cfg.affinity_bandwidth);
  // Normalized affinities of the 3x3 neighborhood, -1 marking out-of-image
  // neighbors.
  std::vector<std::array<double, 9>> affinity(coarse.size());
  ParallelFor(static_cast<size_t>(h), [&](size_t begin, size_t end) {
    for (size_t yy = begin; yy < end; ++yy) {
      const int y = static_cast<int>(yy);
      for (int x = 0; x < w; ++x) {
        std::array<double, 9>& a = affinity[coarse.Index(x, y)];
        double sum = 0.0;
        for (int k = 0; k < 9; ++k) {
          const int qx = x + k % 3 - 1;
          const int qy = y + k / 3 - 1;
          if (!coarse.Contains(qx, qy)) {
            a[static_cast<size_t>(k)] = -1.0;
            continue;
          }
          const double diff = guide(x, y) - guide(qx, qy);
          a[static_cast<size_t>(k)] = std::exp(-diff * diff * inv_bw2);
          sum += a[static_cast<size_t>(k)];
        }
        for (double& v : a) {
          if (v >= 0.0) v /= sum;
        }
      }
    }
  }, 8);

  DepthMap current = coarse;
  DepthMap next(w, h, 0.0);
  for (int it = 0; it < cfg.refine_iterations; ++it) {
    ParallelFor(static_cast<size_t>(h), [&](size_t begin, size_t end) {
      for (size_t yy = begin; yy < end; ++yy) {
        const int y = static_cast<int>(yy);
        for (int x = 0; x < w; ++x) {
          const size_t i = coarse.Index(x, y);
          if (anchors[i] > 0.0) {
            next[i] = anchors[i];
            continue;
          }
          const std::array<double, 9>& a = affinity[i];
          double acc = 0.0;
          double lo = std::numeric_limits<double>::infinity();
          double hi = -std::numeric_limits<double>::infinity();
          for (int k = 0; k < 9; ++k) {
            const double wk = a[static_cast<size_t>(k)];
            if (wk < 0.0) continue;
            const double v = current(x + k % 3 - 1, y + k / 3 - 1);
            acc += wk * v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
          // A convex combination stays inside the neighborhood range; the
          // clamp only removes rounding.
          next[i] = std::clamp(acc, lo, hi);
        }
      }
    }, 8);
    std::swap(current, next);
  }
  return current;
}

TemporalState CarrySamples(const FusedSeed& seed, const DepthMap& prediction,
                           const Intrinsics& k,
                           const RigidTransform& pose_to_next,
                           const PipelineConfig& cfg) {
  RequireMatches(prediction, k, "carry_samples");
  RequireSameShape(prediction, seed.depth, "carry_samples");
  RequireSameShape(prediction, seed.weight, "carry_samples");
  RequireSameShape(prediction, seed.offset_u, "carry_samples");
  RequireSameShape(prediction, seed.offset_v, "carry_samples");
  const int w = k.width;
  const int h = k.height;
  const DepthMap visible = WarpDepth(prediction, k, pose_to_next).depth;

  const Eigen::Matrix3d& r = pose_to_next.rotation();
  const Eigen::Vector3d& t = pose_to_next.translation();
  const size_t n = seed.depth.size();
  std::vector<int64_t> target(n, WarpCorrespondence::kNoSource);
  std::vector<double> depth(n, 0.0);
  std::vector<double> tu(n, 0.0);
  std::vector<double> tv(n, 0.0);
  ParallelFor(n, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const double d = seed.depth[i];
      if (!(d > 0.0) || !(seed.weight[i] > 0.0)) continue;
      const double u = static_cast<double>(i % w) + seed.offset_u[i];
      const double v = static_cast<double>(i / w) + seed.offset_v[i];
      const Eigen::Vector3d p(d * (u - k.cx) / k.fx, d * (v - k.cy) / k.fy, d);
      const Eigen::Vector3d q = r * p + t;
      if (!(q.z() > kMinDepth)) continue;
      tu[i] = k.fx * q.x() / q.z() + k.cx;
      tv[i] = k.fy * q.y() / q.z() + k.cy;
      int x = 0;
      int y = 0;
      if (!RasterizeNearest(tu[i], tv[i], w, h, &x, &y)) continue;
      target[i] = static_cast<int64_t>(prediction.Index(x, y));
      depth[i] = q.z();
    }
  });
  const std::vector<int64_t> winner = ResolveMinDepthScatter(target, depth, n);

  TemporalState out = TemporalState::Empty(w, h);
  ParallelFor(static_cast<size_t>(h), [&](size_t begin, size_t end) {
    for (size_t yy = begin; yy < end; ++yy) {
      const int y = static_cast<int>(yy);
      for (int x = 0; x < w; ++x) {
        const size_t j = prediction.Index(x, y);
        const int64_t s = winner[j];
        if (s < 0) continue;
        const auto src = static_cast<size_t>(s);
        const double c = cfg.confidence_decay * seed.weight[src];
        if (c <= 0.0 || c < cfg.min_confidence) continue;
        const double z = depth[src];
        const double limit = z / (1.0 + cfg.surface_margin);
        bool hidden = false;
        for (int qy = std::max(0, y - 1); qy <= std::min(h - 1, y + 1); ++qy) {
          for (int qx = std::max(0, x - 1); qx <= std::min(w - 1, x + 1); ++qx) {
            const double q = visible(qx, qy);
            if (q > 0.0 && q < limit) hidden = true;
          }
        }
        if (hidden) continue;
        out.warped_prev[j] = z;
        out.confidence[j] = c;
        out.offset_u[j] = std::clamp(tu[src] - x, -0.5, 0.5);
        out.offset_v[j] = std::clamp(tv[src] - y, -0.5, 0.5);
      }
    }
  }, 8);
  return out;
}

StepResult Step(const FrameInputs& frame, const TemporalState& state,
                const std::optional<RigidTransform>& pose_to_next,
                const PipelineConfig& cfg) {
  cfg.Validate();
  const DepthMap& sparse = frame.sparse;
  RequireMatches(sparse, frame.intrinsics, "step");
  const TemporalState empty = TemporalState::Empty(sparse.width(), sparse.height());
  const TemporalState& incoming = state.warped_prev.empty() ? empty : state;

  StepResult result;
  result.fused = FuseTemporal(sparse, incoming, cfg);
  const DepthMap coarse = SpatialComplete(
      result.fused.depth, result.fused.weight, frame.image, cfg);
  if (frame.image != nullptr) {
    result.prediction = CspnRefine(coarse, *frame.image, result.fused.depth, cfg);
  } else {
    const GrayImage flat(sparse.width(), sparse.height(), 0.5);
    result.prediction = CspnRefine(coarse, flat, result.fused.depth, cfg);
  }

  if (!pose_to_next) {
    result.next_state = empty;
    return result;
  }
  result.next_state = CarrySamples(result.fused, result.prediction,
                                   frame.intrinsics, *pose_to_next, cfg);
  return result;
}

SequenceResult RunSequence(const Sequence& seq, const PipelineConfig& cfg,
                           bool temporal) {
  if (seq.frames.empty()) throw DomainError("run_sequence: empty sequence");
  if (temporal && !seq.HasPoses()) {
    throw DomainError("run_sequence: temporal mode needs a pose between every "
                      "pair of frames");
  }
  cfg.Validate();
  const Intrinsics& k = seq.intrinsics;
  SequenceResult out;
  TemporalState state = TemporalState::Empty(k.width, k.height);
  for (size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    std::optional<RigidTransform> pose;
    if (temporal && i + 1 < seq.frames.size()) pose = seq.relative_poses[i];
    const FrameInputs inputs{f.sparse, f.image ? &*f.image : nullptr, k};
    StepResult step = Step(inputs, state, pose, cfg);

    FrameResult fr;
    fr.seed_density = step.fused.depth.Density();
    if (f.groundtruth && f.groundtruth->ValidCount() > 0) {
      fr.metrics = ComputeMetrics(step.prediction, *f.groundtruth);
    }
    fr.prediction = std::move(step.prediction);
    out.frames.push_back(std::move(fr));
    state = temporal ? std::move(step.next_state)
                     : TemporalState::Empty(k.width, k.height);
  }
  return out;
}

}  // namespace tdc
