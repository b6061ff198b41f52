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

#include "ckc/instance.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ckc {

PointSet empty_set(int n) { return PointSet(static_cast<size_t>(n)); }

PointSet full_set(int n) {
  PointSet s(static_cast<size_t>(n));
  s.set();
  return s;
}

PointSet make_set(int n, std::span<const int> points) {
  PointSet s(static_cast<size_t>(n));
  for (int p : points) {
    if (p < 0 || p >= n) throw std::invalid_argument("point index out of range");
    s.set(static_cast<size_t>(p));
  }
  return s;
}

std::vector<int> members(const PointSet& set) {
  std::vector<int> out;
  out.reserve(set.count());
  for (size_t i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

// Interns squared distances and converts them to ranks at the end.
class DistanceInterner {
 public:
  explicit DistanceInterner(int n) : n_(n), ids_(static_cast<size_t>(n) * n, 0) {
    intern(Rational(0));
  }

  void set(int i, int j, const Rational& squared) {
    const uint32_t id = intern(squared);
    ids_[static_cast<size_t>(i) * n_ + j] = id;
    ids_[static_cast<size_t>(j) * n_ + i] = id;
  }

  void finish(std::vector<uint32_t>& rank, std::vector<Radius>& distinct) {
    std::vector<uint32_t> id_to_rank(values_.size());
    distinct.clear();
    distinct.reserve(values_.size());
    uint32_t r = 0;
    for (const auto& [value, id] : lookup_) {
      id_to_rank[id] = r++;
      distinct.push_back(Radius::from_squared(value));
    }
    rank.resize(ids_.size());
    for (size_t t = 0; t < ids_.size(); ++t) rank[t] = id_to_rank[ids_[t]];
  }

 private:
  uint32_t intern(const Rational& squared) {
    auto it = lookup_.find(squared);
    if (it != lookup_.end()) return it->second;
    const auto id = static_cast<uint32_t>(values_.size());
    values_.push_back(squared);
    lookup_.emplace(squared, id);
    return id;
  }

  int n_;
  std::vector<uint32_t> ids_;
  std::vector<Rational> values_;
  std::map<Rational, uint32_t> lookup_;
};

// sqrt(a) <= sqrt(b) + sqrt(c), decided on the squares.
bool sqrt_triangle_holds(const Rational& a, const Rational& b, const Rational& c) {
  Rational lhs = a - b - c;
  if (sgn(lhs) <= 0) return true;
  return lhs * lhs <= 4 * b * c;
}

}  // namespace

Instance Instance::from_matrix(const std::vector<std::vector<Rational>>& dist,
                               std::vector<int> colors, int64_t k,
                               std::vector<int64_t> req, MetricCheck check) {
  const int n = static_cast<int>(dist.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(dist[i].size()) != n) {
      throw std::invalid_argument("distance matrix is not square");
    }
    if (dist[i][i] != 0) throw std::invalid_argument("distance matrix diagonal must be 0");
    for (int j = 0; j < i; ++j) {
      if (dist[i][j] != dist[j][i]) {
        throw std::invalid_argument("distance matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  return from_distance_fn(
      n, [&](int i, int j) { return dist[i][j]; }, std::move(colors), k,
      std::move(req), check);
}

Instance Instance::from_coords(const Coords& coords, std::vector<int> colors,
                               int64_t k, std::vector<int64_t> req) {
  const int n = static_cast<int>(coords.size());
  Instance inst;
  inst.n_ = n;
  DistanceInterner interner(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      mpz_class dx(static_cast<long>(coords[i][0]));
      dx -= static_cast<long>(coords[j][0]);
      mpz_class dy(static_cast<long>(coords[i][1]));
      dy -= static_cast<long>(coords[j][1]);
      interner.set(i, j, Rational(dx * dx + dy * dy));
    }
  }
  interner.finish(inst.rank_, inst.distinct_);
  inst.coords_ = coords;
  inst.finish(std::move(colors), k, std::move(req));
  return inst;
}

Instance Instance::from_distance_fn(int n,
                                    const std::function<Rational(int, int)>& dist,
                                    std::vector<int> colors, int64_t k,
                                    std::vector<int64_t> req, MetricCheck check) {
  if (n < 0) throw std::invalid_argument("negative point count");
  Instance inst;
  inst.n_ = n;
  DistanceInterner interner(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Rational d = dist(i, j);
      d.canonicalize();
      if (sgn(d) < 0) throw std::invalid_argument("negative distance");
      interner.set(i, j, d * d);
    }
  }
  interner.finish(inst.rank_, inst.distinct_);
  inst.finish(std::move(colors), k, std::move(req));
  if (check == MetricCheck::kValidate) inst.validate_triangle();
  return inst;
}

void Instance::finish(std::vector<int> colors, int64_t k, std::vector<int64_t> req) {
  if (static_cast<int>(colors.size()) != n_) {
    throw std::invalid_argument("expected " + std::to_string(n_) + " colors, got " +
                                std::to_string(colors.size()));
  }
  if (req.empty()) throw std::invalid_argument("at least one color class is required");
  const int classes = static_cast<int>(req.size());
  class_members_.assign(classes, empty_set(n_));
  for (int i = 0; i < n_; ++i) {
    if (colors[i] < 0 || colors[i] >= classes) {
      throw std::invalid_argument("color of point " + std::to_string(i) + " out of range");
    }
    class_members_[colors[i]].set(static_cast<size_t>(i));
  }
  if (k < 0 || k > n_) throw std::invalid_argument("k must satisfy 0 <= k <= n");
  for (int c = 0; c < classes; ++c) {
    if (req[c] < 0 || req[c] > static_cast<int64_t>(class_members_[c].count())) {
      throw std::invalid_argument("requirement of class " + std::to_string(c + 1) +
                                  " must lie in [0, class size]");
    }
  }
  colors_ = std::move(colors);
  k_ = k;
  req_ = std::move(req);
}

void Instance::validate_triangle() {
  // d(i,j) <= max(d(i,v), d(v,j)) settles most triples from ranks alone.
  std::unordered_map<uint64_t, bool> cache;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const uint32_t rij = rank(i, j);
      for (int v = 0; v < n_; ++v) {
        const uint32_t a = rank(i, v);
        const uint32_t b = rank(v, j);
        if (rij <= std::max(a, b)) continue;
        const uint64_t key = (static_cast<uint64_t>(rij) << 40) ^
                             (static_cast<uint64_t>(std::min(a, b)) << 20) ^ std::max(a, b);
        auto it = cache.find(key);
        bool ok;
        if (it != cache.end()) {
          ok = it->second;
        } else {
          ok = sqrt_triangle_holds(distinct_[rij].squared(), distinct_[a].squared(),
                                   distinct_[b].squared());
          cache.emplace(key, ok);
        }
        if (!ok) {
          violation_ = TriangleViolation{i, j, v};
          return;
        }
      }
    }
  }
}

uint32_t Instance::threshold_rank(const Radius& radius) const {
  // distinct_[0] is 0 <= any radius.
  auto it = std::upper_bound(distinct_.begin(), distinct_.end(), radius);
  return static_cast<uint32_t>(std::distance(distinct_.begin(), it) - 1);
}

Instance Instance::with_requirements(int64_t k, std::vector<int64_t> req) const {
  Instance copy = *this;
  copy.finish(colors_, k, std::move(req));
  return copy;
}

std::vector<int64_t> class_counts(const Instance& inst, const PointSet& set) {
  std::vector<int64_t> counts(inst.num_classes());
  for (int c = 0; c < inst.num_classes(); ++c) {
    counts[c] = static_cast<int64_t>((set & inst.class_members(c)).count());
  }
  return counts;
}

BallTable::BallTable(const Instance& inst, const Radius& radius)
    : inst_(&inst), radius_(radius) {
  const int n = inst.size();
  const uint32_t t = inst.threshold_rank(radius);
  balls_.assign(n, empty_set(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (inst.rank(i, j) <= t) balls_[j].set(static_cast<size_t>(i));
    }
  }
  flowers_.assign(n, empty_set(n));
  for (int j = 0; j < n; ++j) {
    const PointSet& b = balls_[j];
    for (size_t i = b.find_first(); i != PointSet::npos; i = b.find_next(i)) {
      flowers_[j] |= balls_[i];
    }
  }
}

PointSet BallTable::flower(int j, const PointSet& via, const PointSet& within) const {
  PointSet out = empty_set(size());
  const PointSet mids = balls_[j] & via;
  for (size_t i = mids.find_first(); i != PointSet::npos; i = mids.find_next(i)) {
    out |= balls_[i];
  }
  out &= within;
  return out;
}

namespace {

void check_index(const Instance& inst, int j) {
  if (j < 0 || j >= inst.size()) {
    throw std::invalid_argument("point index " + std::to_string(j) + " out of range");
  }
}

}  // namespace

PointSet ball(const Instance& inst, int j, const Radius& radius) {
  check_index(inst, j);
  const uint32_t t = inst.threshold_rank(radius);
  PointSet out = empty_set(inst.size());
  for (int i = 0; i < inst.size(); ++i) {
    if (inst.rank(i, j) <= t) out.set(static_cast<size_t>(i));
  }
  return out;
}

PointSet flower(const Instance& inst, int j, const Radius& radius) {
  const PointSet b = ball(inst, j, radius);
  PointSet out = empty_set(inst.size());
  for (size_t i = b.find_first(); i != PointSet::npos; i = b.find_next(i)) {
    out |= ball(inst, static_cast<int>(i), radius);
  }
  return out;
}

Solution verify(const Instance& inst, std::vector<int> centers, const Radius& radius) {
  for (int c : centers) check_index(inst, c);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  const uint32_t t = inst.threshold_rank(radius);
  PointSet covered = empty_set(inst.size());
  for (int i = 0; i < inst.size(); ++i) {
    for (int c : centers) {
      if (inst.rank(i, c) <= t) {
        covered.set(static_cast<size_t>(i));
        break;
      }
    }
  }
  Solution sol;
  sol.centers = std::move(centers);
  sol.radius = radius;
  sol.covered = class_counts(inst, covered);
  sol.feasible = static_cast<int64_t>(sol.centers.size()) <= inst.k();
  for (int c = 0; c < inst.num_classes(); ++c) {
    if (sol.covered[c] < inst.req(c)) sol.feasible = false;
  }
  return sol;
}

std::vector<Radius> radius_candidates(const Instance& inst) {
  return inst.distinct_distances();
}

}  // namespace ckc
