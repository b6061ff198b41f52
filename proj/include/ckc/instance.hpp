// Copyright 2026 The ckc Authors
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

#ifndef CKC_INSTANCE_HPP_
#define CKC_INSTANCE_HPP_

#include <array>
#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ckc/rational.hpp"

namespace ckc {

using PointSet = boost::dynamic_bitset<>;

PointSet empty_set(int n);
PointSet full_set(int n);
PointSet make_set(int n, std::span<const int> points);
std::vector<int> members(const PointSet& set);

enum class MetricCheck { kValidate, kTrusted };

struct TriangleViolation {
  int i = 0;
  int j = 0;
  int via = 0;  // d(i, j) > d(i, via) + d(via, j)
};

// Points of a metric space, each carrying one of `num_classes()` colors, with
// a center budget and per-color coverage requirements. Distances are held as
// ranks into a sorted table of distinct squared values so every "within
// radius" test is an exact integer comparison. Immutable after construction.
class Instance {
 public:
  using Coords = std::vector<std::array<int64_t, 2>>;

  // `colors` are 0-based class indices; the number of classes is req.size().
  // Throws std::invalid_argument when the matrix is not symmetric with a zero
  // diagonal and nonnegative entries, a color is out of range, k > n, or some
  // requirement exceeds its class size.
  static Instance from_matrix(const std::vector<std::vector<Rational>>& dist,
                              std::vector<int> colors, int64_t k,
                              std::vector<int64_t> req,
                              MetricCheck check = MetricCheck::kValidate);

  // Euclidean distances between integer points; exact through squares.
  static Instance from_coords(const Coords& coords, std::vector<int> colors,
                              int64_t k, std::vector<int64_t> req);

  // `dist(i, j)` is queried once for every i < j.
  static Instance from_distance_fn(int n,
                                   const std::function<Rational(int, int)>& dist,
                                   std::vector<int> colors, int64_t k,
                                   std::vector<int64_t> req,
                                   MetricCheck check = MetricCheck::kValidate);

  int size() const { return n_; }
  int num_classes() const { return static_cast<int>(req_.size()); }
  int color(int i) const { return colors_[i]; }
  const std::vector<int>& colors() const { return colors_; }
  int64_t k() const { return k_; }
  int64_t req(int c) const { return req_[c]; }
  const std::vector<int64_t>& requirements() const { return req_; }
  const PointSet& class_members(int c) const { return class_members_[c]; }
  int64_t class_size(int c) const {
    return static_cast<int64_t>(class_members_[c].count());
  }

  uint32_t rank(int i, int j) const { return rank_[static_cast<size_t>(i) * n_ + j]; }
  Radius distance(int i, int j) const { return distinct_[rank(i, j)]; }

  // Distinct pairwise distances (including 0), strictly increasing.
  const std::vector<Radius>& distinct_distances() const { return distinct_; }

  // Largest rank whose distance is <= radius.
  uint32_t threshold_rank(const Radius& radius) const;

  // True unless an explicit matrix failed the triangle-inequality pass.
  bool is_metric() const { return !violation_.has_value(); }
  const std::optional<TriangleViolation>& triangle_violation() const {
    return violation_;
  }

  const std::optional<Coords>& coords() const { return coords_; }

  // Copy with different budget / requirements (validated as at load).
  Instance with_requirements(int64_t k, std::vector<int64_t> req) const;

 private:
  Instance() = default;
  void finish(std::vector<int> colors, int64_t k, std::vector<int64_t> req);
  void validate_triangle();

  int n_ = 0;
  std::vector<uint32_t> rank_;
  std::vector<Radius> distinct_;
  std::vector<int> colors_;
  int64_t k_ = 0;
  std::vector<int64_t> req_;
  std::vector<PointSet> class_members_;
  std::optional<TriangleViolation> violation_;
  std::optional<Coords> coords_;
};

// Per-class counts of the members of `set`.
std::vector<int64_t> class_counts(const Instance& inst, const PointSet& set);

// Balls and flowers of every point at one radius.
class BallTable {
 public:
  BallTable(const Instance& inst, const Radius& radius);

  const Instance& instance() const { return *inst_; }
  const Radius& radius() const { return radius_; }
  int size() const { return inst_->size(); }

  const PointSet& ball(int j) const { return balls_[j]; }
  // Union of the balls around every point of ball(j).
  const PointSet& flower(int j) const { return flowers_[j]; }
  // Union of ball(i) ∩ within over i in ball(j) ∩ via.
  PointSet flower(int j, const PointSet& via, const PointSet& within) const;

 private:
  const Instance* inst_;
  Radius radius_;
  std::vector<PointSet> balls_;
  std::vector<PointSet> flowers_;
};

// {i : dist(i, j) <= radius}. Throws std::invalid_argument for a bad index.
PointSet ball(const Instance& inst, int j, const Radius& radius);
PointSet flower(const Instance& inst, int j, const Radius& radius);

// Centers with a common radius and the per-class number of distinct points
// they cover. `centers` is sorted and duplicate-free.
struct Solution {
  std::vector<int> centers;
  Radius radius;
  std::vector<int64_t> covered;
  bool feasible = false;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Recounts coverage exactly; feasible iff |centers| <= k and every class meets
// its requirement. Duplicate centers are merged. Throws std::invalid_argument
// for an out-of-range center.
Solution verify(const Instance& inst, std::vector<int> centers,
                const Radius& radius);

// Sorted distinct pairwise distances, 0 included.
std::vector<Radius> radius_candidates(const Instance& inst);

}  // namespace ckc

#endif  // CKC_INSTANCE_HPP_
