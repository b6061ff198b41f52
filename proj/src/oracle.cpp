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

#include "ckc/oracle.hpp"

#include <algorithm>
#include <string>

namespace ckc {
namespace {

double binomial(int64_t n, int64_t r) {
  double out = 1;
  for (int64_t i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
  return out;
}

class CoverSearch {
 public:
  CoverSearch(const Instance& inst, std::vector<PointSet> balls, std::vector<int> ids)
      : inst_(inst), balls_(std::move(balls)), ids_(std::move(ids)) {
    const int classes = inst.num_classes();
    // suffix_union_[t] = union of balls t.. end
    suffix_union_.assign(balls_.size() + 1, empty_set(inst.size()));
    for (size_t t = balls_.size(); t-- > 0;) suffix_union_[t] = suffix_union_[t + 1] | balls_[t];
    ball_counts_.reserve(balls_.size());
    for (const auto& b : balls_) ball_counts_.push_back(class_counts(inst, b));
    suffix_max_.assign(balls_.size() + 1, std::vector<int64_t>(classes, 0));
    for (size_t t = balls_.size(); t-- > 0;) {
      for (int c = 0; c < classes; ++c) {
        suffix_max_[t][c] = std::max(suffix_max_[t + 1][c], ball_counts_[t][c]);
      }
    }
  }

  std::optional<std::vector<int>> run(int64_t slots) {
    chosen_.clear();
    PointSet covered = empty_set(inst_.size());
    if (dfs(0, slots, covered)) {
      std::vector<int> out;
      for (size_t t : chosen_) out.push_back(ids_[t]);
      std::sort(out.begin(), out.end());
      return out;
    }
    return std::nullopt;
  }

  int64_t examined() const { return examined_; }

 private:
  bool meets(const std::vector<int64_t>& counts) const {
    for (int c = 0; c < inst_.num_classes(); ++c) {
      if (counts[c] < inst_.req(c)) return false;
    }
    return true;
  }

  bool dfs(size_t from, int64_t slots, const PointSet& covered) {
    ++examined_;
    const std::vector<int64_t> have = class_counts(inst_, covered);
    if (meets(have)) return true;
    if (slots == 0 || from >= balls_.size()) return false;
    const std::vector<int64_t> reach =
        class_counts(inst_, suffix_union_[from] - covered);
    for (int c = 0; c < inst_.num_classes(); ++c) {
      const int64_t bound = std::min(reach[c], slots * suffix_max_[from][c]);
      if (have[c] + bound < inst_.req(c)) return false;
    }
    for (size_t t = from; t < balls_.size(); ++t) {
      if (balls_[t].is_subset_of(covered)) continue;
      chosen_.push_back(t);
      if (dfs(t + 1, slots - 1, covered | balls_[t])) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const Instance& inst_;
  std::vector<PointSet> balls_;
  std::vector<int> ids_;
  std::vector<PointSet> suffix_union_;
  std::vector<std::vector<int64_t>> ball_counts_;
  std::vector<std::vector<int64_t>> suffix_max_;
  std::vector<size_t> chosen_;
  int64_t examined_ = 0;
};

}  // namespace

std::optional<std::vector<int>> feasible_at(const Instance& inst, const Radius& radius,
                                            int64_t* sets_examined) {
  const int n = inst.size();
  std::vector<PointSet> all;
  all.reserve(n);
  for (int j = 0; j < n; ++j) all.push_back(ball(inst, j, radius));
  std::vector<PointSet> kept;
  std::vector<int> ids;
  for (int j = 0; j < n; ++j) {
    bool dominated = false;
    for (int i = 0; i < n && !dominated; ++i) {
      if (i == j || !all[j].is_subset_of(all[i])) continue;
      // Equal balls: keep the lowest index.
      dominated = all[i] != all[j] || i < j;
    }
    if (!dominated) {
      kept.push_back(all[j]);
      ids.push_back(j);
    }
  }
  const int64_t m = static_cast<int64_t>(kept.size());
  const int64_t slots = std::min<int64_t>(inst.k(), m);
  if (binomial(m, slots) > kOracleSubsetLimit) {
    throw TractabilityError("oracle: C(" + std::to_string(m) + ", " + std::to_string(slots) +
                            ") center sets exceed the enumeration limit");
  }
  CoverSearch search(inst, std::move(kept), std::move(ids));
  auto out = search.run(slots);
  if (sets_examined) *sets_examined = search.examined();
  return out;
}

OracleResult exact_opt(const Instance& inst) {
  const std::vector<Radius> radii = radius_candidates(inst);
  size_t lo = 0;
  size_t hi = radii.size() - 1;
  int64_t examined = 0;
  auto best = feasible_at(inst, radii[hi], &examined);
  if (!best) throw std::invalid_argument("oracle: no radius admits a feasible center set");
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    int64_t seen = 0;
    if (auto found = feasible_at(inst, radii[mid], &seen)) {
      hi = mid;
      best = std::move(found);
      examined = seen;
    } else {
      lo = mid + 1;
    }
  }
  return OracleResult{radii[hi], std::move(*best), examined};
}

bool subset_sum(std::span<const int64_t> values, int64_t k, int64_t target) {
  const int64_t n = static_cast<int64_t>(values.size());
  if (k < 0 || k > n || target < 0) return false;
  // reach[j][s]: some j-subset of the values seen so far sums to s.
  std::vector<std::vector<char>> reach(k + 1, std::vector<char>(target + 1, 0));
  reach[0][0] = 1;
  for (int64_t v : values) {
    if (v < 0) throw std::invalid_argument("subset_sum: negative value");
    for (int64_t j = k; j >= 1; --j) {
      for (int64_t s = target; s >= v; --s) {
        if (reach[j - 1][s - v]) reach[j][s] = 1;
      }
    }
  }
  return reach[k][target] != 0;
}

namespace {

bool enum_groups(const ItemGroups& groups, size_t g, std::vector<int64_t>& sum,
                 std::span<const int64_t> target) {
  if (g == groups.size()) return std::equal(sum.begin(), sum.end(), target.begin());
  if (enum_groups(groups, g + 1, sum, target)) return true;
  for (const auto& item : groups[g]) {
    for (size_t d = 0; d < sum.size(); ++d) sum[d] += item[d];
    const bool hit = enum_groups(groups, g + 1, sum, target);
    for (size_t d = 0; d < sum.size(); ++d) sum[d] -= item[d];
    if (hit) return true;
  }
  return false;
}

}  // namespace

bool group_knapsack_enum(const ItemGroups& groups, std::span<const int64_t> target) {
  if (groups.size() > kEnumGroupLimit) {
    throw TractabilityError("group_knapsack_enum: more than six groups");
  }
  for (const auto& group : groups) {
    for (const auto& item : group) {
      if (item.size() != target.size()) {
        throw std::invalid_argument("group_knapsack_enum: dimension mismatch");
      }
    }
  }
  std::vector<int64_t> sum(target.size(), 0);
  return enum_groups(groups, 0, sum, target);
}

}  // namespace ckc
