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

#include "ckc/multicolor.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ckc/oracle.hpp"

namespace ckc {

int64_t guess_budget_from_env() {
  const char* text = std::getenv("CKC_GUESS_BUDGET");
  if (!text || !*text) return 0;
  char* end = nullptr;
  const long long value = std::strtoll(text, &end, 10);
  if (*end != '\0' || value <= 0) return 0;
  return value;
}

namespace {

int resolve_full_class(const Instance& inst, int full_class) {
  const int classes = inst.num_classes();
  if (full_class < 0) full_class = classes - 1;
  if (full_class >= classes) throw std::invalid_argument("full class out of range");
  return full_class;
}

std::vector<int> deficit_classes(int classes, int full_class) {
  std::vector<int> out;
  for (int c = 0; c < classes; ++c) {
    if (c != full_class) out.push_back(c);
  }
  return out;
}

}  // namespace

std::optional<OmegaPseudo> pseudo_approx_omega_detailed(const Instance& inst,
                                                        const Radius& radius,
                                                        int full_class) {
  full_class = resolve_full_class(inst, full_class);
  const BallTable balls(inst, radius);
  const Lp1Spec spec = full_lp1_spec(inst);
  auto point = solve_lp1(balls, spec);
  if (!point) return std::nullopt;
  ClusterDecomposition dec = cluster(balls, spec, *point);
  const FractionalSolution lp2 = solve_extreme_max(build_lp2(dec, inst.k(), inst.requirements(), 0));
  auto centers = round_fractional(dec, lp2, inst.req(0), full_class);
  if (!centers) return std::nullopt;
  return OmegaPseudo{std::move(*centers), std::move(*point), std::move(dec)};
}

std::optional<std::vector<int>> pseudo_approx_omega(const Instance& inst, const Radius& radius,
                                                    int full_class) {
  auto detail = pseudo_approx_omega_detailed(inst, radius, full_class);
  if (!detail) return std::nullopt;
  return std::move(detail->centers);
}

GroupDp::GroupDp(std::vector<std::vector<Item>> groups, int64_t max_count, size_t dims)
    : groups_(std::move(groups)) {
  if (dims == 0) throw std::invalid_argument("GroupDp: value vectors need a count slot");
  layers_.resize(groups_.size() + 1);
  layers_[0].emplace(std::vector<int64_t>(dims, 0), -1);
  for (size_t m = 0; m < groups_.size(); ++m) {
    auto& next = layers_[m + 1];
    for (const auto& [sum, unused] : layers_[m]) next.emplace(sum, -1);
    for (size_t t = 0; t < groups_[m].size(); ++t) {
      const Item& item = groups_[m][t];
      if (item.value.size() != dims) throw std::invalid_argument("GroupDp: ragged value vectors");
      for (const auto& [sum, unused] : layers_[m]) {
        if (sum[0] + item.value[0] > max_count) continue;
        std::vector<int64_t> moved = sum;
        for (size_t d = 0; d < dims; ++d) moved[d] += item.value[d];
        next.emplace(std::move(moved), static_cast<int>(t));
      }
    }
  }
}

bool GroupDp::reachable(size_t prefix, const std::vector<int64_t>& sum) const {
  return prefix < layers_.size() && layers_[prefix].count(sum) > 0;
}

std::optional<std::vector<int>> GroupDp::reconstruct(const std::vector<int64_t>& sum) const {
  if (!reachable(groups_.size(), sum)) return std::nullopt;
  std::vector<int> picks;
  std::vector<int64_t> at = sum;
  for (size_t m = groups_.size(); m > 0; --m) {
    const int t = layers_[m].at(at);
    if (t < 0) continue;
    const Item& item = groups_[m - 1][t];
    picks.push_back(item.point);
    for (size_t d = 0; d < at.size(); ++d) at[d] -= item.value[d];
  }
  std::reverse(picks.begin(), picks.end());
  return picks;
}

std::vector<std::vector<int64_t>> GroupDp::frontier(int64_t count) const {
  std::vector<std::vector<int64_t>> sums;
  for (const auto& [sum, unused] : layers_.back()) {
    if (sum[0] == count) sums.emplace_back(sum.begin() + 1, sum.end());
  }
  std::vector<std::vector<int64_t>> out;
  for (size_t a = 0; a < sums.size(); ++a) {
    bool dominated = false;
    for (size_t b = 0; b < sums.size() && !dominated; ++b) {
      if (a == b) continue;
      bool ge = true;
      for (size_t d = 0; d < sums[a].size() && ge; ++d) ge = sums[b][d] >= sums[a][d];
      dominated = ge && sums[b] != sums[a];
    }
    if (!dominated) out.push_back(sums[a]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ChainGuess guess_chains(const BallTable& balls, const std::vector<int>& guessed, int full_class,
                        int per_chain) {
  const Instance& inst = balls.instance();
  const int n = inst.size();
  const std::vector<int> deficits = deficit_classes(inst.num_classes(), full_class);
  if (guessed.size() != deficits.size() * static_cast<size_t>(per_chain)) {
    throw std::invalid_argument("guess_chains: wrong number of guesses");
  }
  ChainGuess out;
  out.guessed = guessed;
  out.tau.assign(inst.num_classes(), 0);
  out.remaining = full_set(n);
  out.guess_region = empty_set(n);
  size_t pos = 0;
  for (int cls : deficits) {
    const PointSet& members_of = inst.class_members(cls);
    PointSet current = full_set(n);
    int64_t last = 0;
    for (int i = 0; i < per_chain; ++i, ++pos) {
      const int c = guessed[pos];
      auto gain_of = [&](int q) {
        return static_cast<int64_t>(
            ((balls.flower(q) - balls.ball(c)) & members_of & current).count());
      };
      int best = -1;
      int64_t best_gain = -1;
      const PointSet options = balls.ball(c) & current;
      for (size_t q = options.find_first(); q != PointSet::npos; q = options.find_next(q)) {
        const int64_t g = gain_of(static_cast<int>(q));
        if (g > best_gain) {
          best_gain = g;
          best = static_cast<int>(q);
        }
      }
      if (best < 0) {
        best = c;
        best_gain = gain_of(c);
      }
      out.picked.push_back(best);
      current -= balls.flower(best);
      out.remaining -= balls.flower(best);
      out.guess_region |= balls.ball(c);
      last = best_gain;
    }
    out.tau[cls] = last;
  }
  out.in_guess = class_counts(inst, out.guess_region);
  return out;
}

OmegaDense dense_decompose_omega(const BallTable& balls, const PointSet& start,
                                 const std::vector<int64_t>& tau, int full_class,
                                 DenseRule rule) {
  const Instance& inst = balls.instance();
  const std::vector<int> deficits = deficit_classes(inst.num_classes(), full_class);
  OmegaDense out;
  out.sparse = start;
  while (true) {
    int point = -1;
    int dense_class = -1;
    for (size_t p = out.sparse.find_first(); p != PointSet::npos && point < 0;
         p = out.sparse.find_next(p)) {
      for (int cls : deficits) {
        const auto heavy = (balls.ball(static_cast<int>(p)) & out.sparse &
                            inst.class_members(cls)).count();
        if (static_cast<int64_t>(heavy) > 2 * tau[cls]) {
          point = static_cast<int>(p);
          dense_class = cls;
          break;
        }
      }
    }
    if (point < 0) break;
    OmegaDenseStep step;
    step.point = point;
    step.dense_class = dense_class;
    step.removed = empty_set(inst.size());
    const PointSet core = balls.ball(point) & out.sparse;
    for (size_t i = out.sparse.find_first(); i != PointSet::npos; i = out.sparse.find_next(i)) {
      const PointSet shared = balls.ball(static_cast<int>(i)) & core;
      bool joins;
      if (rule == DenseRule::kDenseColor) {
        joins = static_cast<int64_t>((shared & inst.class_members(dense_class)).count()) >
                tau[dense_class];
      } else {
        joins = static_cast<int>(i) == point;
        if (!joins) {
          joins = true;
          for (int cls : deficits) {
            if (static_cast<int64_t>((shared & inst.class_members(cls)).count()) <= tau[cls]) {
              joins = false;
              break;
            }
          }
        }
      }
      if (joins) {
        step.group.push_back(static_cast<int>(i));
        step.removed |= balls.ball(static_cast<int>(i));
      }
    }
    step.removed &= out.sparse;
    out.sparse -= step.removed;
    out.steps.push_back(std::move(step));
  }
  out.dense = start - out.sparse;
  return out;
}

namespace {

void bump(std::atomic<int64_t> SolveTrace::*field, const SolverOptions& options) {
  if (options.trace) (options.trace->*field).fetch_add(1, std::memory_order_relaxed);
}

std::vector<PointSet::block_type> blocks(const PointSet& set) {
  std::vector<PointSet::block_type> out;
  boost::to_block_range(set, std::back_inserter(out));
  return out;
}

int64_t saturating_power(int64_t base, int64_t exp, int64_t cap) {
  int64_t out = 1;
  for (int64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap;
    out *= base;
  }
  return std::min(out, cap);
}

struct DenseBundle {
  OmegaDense dec;
  GroupDp table;
};

class OmegaSearch {
 public:
  OmegaSearch(const Instance& inst, const Radius& radius, const OmegaOptions& options,
              int full_class)
      : inst_(inst),
        radius_(radius),
        options_(options),
        full_(full_class),
        balls_(inst, radius),
        deficits_(deficit_classes(inst.num_classes(), full_class)) {}

  std::optional<Solution> not_well_separated();
  std::optional<Solution> well_separated(bool* budget_hit, int64_t* tried);
  std::optional<Solution> direct();

 private:
  std::optional<Solution> try_tuple(const std::vector<int>& guessed);
  std::shared_ptr<const DenseBundle> dense_bundle(const PointSet& start,
                                                  const std::vector<int64_t>& tau,
                                                  int64_t budget);
  std::optional<std::vector<int>> sparse(const PointSet& set, const std::vector<int64_t>& tau,
                                         int64_t k_s, const std::vector<int64_t>& req);
  std::optional<Solution> check(std::vector<int> centers, const Radius& radius) {
    bump(&SolveTrace::candidates, options_.solver);
    Solution sol = verify(inst_, std::move(centers), radius);
    if (!sol.feasible) return std::nullopt;
    return sol;
  }

  const Instance& inst_;
  Radius radius_;
  OmegaOptions options_;
  int full_;
  BallTable balls_;
  std::vector<int> deficits_;
  std::mutex mu_;
  std::map<std::tuple<std::vector<PointSet::block_type>, std::vector<int64_t>, int64_t>,
           std::shared_ptr<const DenseBundle>>
      dense_cache_;
  std::map<std::tuple<std::vector<PointSet::block_type>, std::vector<int64_t>, int64_t,
                      std::vector<int64_t>>,
           std::optional<std::vector<int>>>
      sparse_cache_;
};

std::shared_ptr<const DenseBundle> OmegaSearch::dense_bundle(const PointSet& start,
                                                             const std::vector<int64_t>& tau,
                                                             int64_t budget) {
  auto key = std::make_tuple(blocks(start), tau, budget);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = dense_cache_.find(key); it != dense_cache_.end()) {
      bump(&SolveTrace::dp_cache_hits, options_.solver);
      return it->second;
    }
  }
  bump(&SolveTrace::dp_tables, options_.solver);
  OmegaDense dec = dense_decompose_omega(balls_, start, tau, full_, options_.dense_rule);
  std::vector<std::vector<GroupDp::Item>> groups;
  for (const OmegaDenseStep& step : dec.steps) {
    std::vector<GroupDp::Item> items;
    for (int p : step.group) {
      std::vector<int64_t> value{1};
      const auto counts = class_counts(inst_, balls_.ball(p) & step.removed);
      value.insert(value.end(), counts.begin(), counts.end());
      items.push_back({p, std::move(value)});
    }
    groups.push_back(std::move(items));
  }
  auto bundle = std::make_shared<const DenseBundle>(
      DenseBundle{std::move(dec), GroupDp(std::move(groups), budget, 1 + inst_.num_classes())});
  std::lock_guard<std::mutex> lock(mu_);
  return dense_cache_.emplace(std::move(key), bundle).first->second;
}

std::optional<std::vector<int>> OmegaSearch::sparse(const PointSet& set,
                                                    const std::vector<int64_t>& tau,
                                                    int64_t k_s,
                                                    const std::vector<int64_t>& req) {
  auto key = std::make_tuple(blocks(set), tau, k_s, req);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = sparse_cache_.find(key); it != sparse_cache_.end()) {
      bump(&SolveTrace::sparse_cache_hits, options_.solver);
      return it->second;
    }
  }
  bump(&SolveTrace::sparse_calls, options_.solver);
  PointSet closed = empty_set(inst_.size());
  for (size_t j = set.find_first(); j != PointSet::npos; j = set.find_next(j)) {
    const PointSet petals = balls_.flower(static_cast<int>(j), set, set);
    for (int cls : deficits_) {
      if (static_cast<int64_t>((petals & inst_.class_members(cls)).count()) > 3 * tau[cls]) {
        closed |= balls_.ball(static_cast<int>(j));
        break;
      }
    }
  }
  const Lp1Spec spec{set, set, k_s, req, closed & set};
  auto centers = relax_and_round(balls_, spec, Rounding::kFractional, full_);
  std::lock_guard<std::mutex> lock(mu_);
  return sparse_cache_.emplace(std::move(key), std::move(centers)).first->second;
}

std::optional<Solution> OmegaSearch::try_tuple(const std::vector<int>& guessed) {
  bump(&SolveTrace::guesses, options_.solver);
  const int per_chain = 3 * static_cast<int>(deficits_.size());
  const ChainGuess chains = guess_chains(balls_, guessed, full_, per_chain);
  std::vector<int> picked = chains.picked;
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  const int64_t budget = inst_.k() - static_cast<int64_t>(picked.size());
  if (budget < 0) return std::nullopt;
  const auto bundle = dense_bundle(chains.remaining, chains.tau, budget);
  const Radius doubled = radius_.scaled(2);
  const int classes = inst_.num_classes();
  for (int64_t k_d = 0; k_d <= budget; ++k_d) {
    for (const std::vector<int64_t>& covered : bundle->table.frontier(k_d)) {
      std::vector<int64_t> req(classes);
      for (int c = 0; c < classes; ++c) {
        req[c] = std::max<int64_t>(0, inst_.req(c) - chains.in_guess[c] - covered[c]);
      }
      auto sparse_centers = sparse(bundle->dec.sparse, chains.tau, budget - k_d, req);
      if (!sparse_centers) continue;
      std::vector<int64_t> cell{k_d};
      cell.insert(cell.end(), covered.begin(), covered.end());
      auto dense_centers = bundle->table.reconstruct(cell);
      if (!dense_centers) continue;
      std::vector<int> centers = picked;
      centers.insert(centers.end(), dense_centers->begin(), dense_centers->end());
      centers.insert(centers.end(), sparse_centers->begin(), sparse_centers->end());
      if (auto sol = check(std::move(centers), doubled)) return sol;
    }
  }
  return std::nullopt;
}

std::optional<Solution> OmegaSearch::well_separated(bool* budget_hit, int64_t* tried) {
  if (inst_.k() < 3) return std::nullopt;
  const int64_t n = inst_.size();
  const int64_t length = static_cast<int64_t>(deficits_.size()) * 3 *
                         static_cast<int64_t>(deficits_.size());
  constexpr int64_t kHuge = int64_t{1} << 62;
  const int64_t all = saturating_power(n, length, kHuge);
  int64_t budget = options_.guess_budget;
  if (budget <= 0) budget = deficits_.size() == 1 ? kHuge : kDefaultOmegaGuessBudget;
  const int64_t count = std::min(all, budget);
  if (count < all) *budget_hit = true;
  auto found = first_success(count, options_.solver.execution, options_.solver.jobs,
                             [&](int64_t t) {
    std::vector<int> guessed(static_cast<size_t>(length));
    for (int64_t pos = length - 1; pos >= 0; --pos) {
      guessed[pos] = static_cast<int>(t % n);
      t /= n;
    }
    return try_tuple(guessed);
  });
  *tried += found ? found->index + 1 : count;
  if (!found) return std::nullopt;
  return std::move(found->value);
}

std::optional<Solution> OmegaSearch::not_well_separated() {
  if (inst_.k() < 2) return std::nullopt;
  const int n = inst_.size();
  const Radius tripled = radius_.scaled(3);
  const uint32_t reach = inst_.threshold_rank(tripled);
  auto found = first_success(n, options_.solver.execution, options_.solver.jobs,
                             [&](int64_t idx) -> std::optional<Solution> {
    bump(&SolveTrace::outer_points, options_.solver);
    const int p = static_cast<int>(idx);
    PointSet swallowed = empty_set(n);
    for (int i = 0; i < n; ++i) {
      if (inst_.rank(i, p) <= reach) swallowed.set(static_cast<size_t>(i));
    }
    const auto inside = class_counts(inst_, swallowed);
    std::vector<int64_t> residual(inst_.num_classes());
    for (int c = 0; c < inst_.num_classes(); ++c) {
      residual[c] = std::max<int64_t>(0, inst_.req(c) - inside[c]);
    }
    const Lp1Spec spec{full_set(n) - swallowed, full_set(n), inst_.k() - 2, residual, PointSet()};
    auto point = solve_lp1(balls_, spec);
    if (!point) return std::nullopt;
    const ClusterDecomposition dec = cluster(balls_, spec, *point);
    const FractionalSolution lp2 = solve_extreme_max(build_lp2(dec, spec.budget, residual, 0));
    auto rest = round_keep_all(dec, lp2, residual[0]);
    if (rest && static_cast<int64_t>(rest->size()) + 1 > inst_.k()) {
      rest = round_fractional(dec, lp2, residual[0], full_);
    }
    if (!rest) return std::nullopt;
    rest->push_back(p);
    return check(std::move(*rest), tripled);
  });
  if (!found) return std::nullopt;
  return std::move(found->value);
}

std::optional<Solution> OmegaSearch::direct() {
  auto centers = relax_and_round(balls_, full_lp1_spec(inst_), Rounding::kKeepAll, full_);
  if (!centers || static_cast<int64_t>(centers->size()) > inst_.k()) return std::nullopt;
  return check(std::move(*centers), radius_.scaled(2));
}

}  // namespace

OmegaResult solve_omega(const Instance& inst, const OmegaOptions& options) {
  if (inst.num_classes() < 2) throw std::invalid_argument("solve_omega needs two or more classes");
  const int full_class = resolve_full_class(inst, options.full_class);
  OmegaResult out;
  const auto& req = inst.requirements();
  if (std::all_of(req.begin(), req.end(), [](int64_t r) { return r == 0; })) {
    out.solution = verify(inst, {}, Radius());
    return out;
  }
  if (inst.k() == 0) throw std::invalid_argument("k = 0 with a positive requirement");
  const Lp1Spec whole = full_lp1_spec(inst);
  for (const Radius& radius : radius_candidates(inst)) {
    bump(&SolveTrace::radii_tried, options.solver);
    if (!solve_lp1(BallTable(inst, radius), whole)) {
      bump(&SolveTrace::radii_pruned, options.solver);
      continue;
    }
    OmegaSearch search(inst, radius, options, full_class);
    std::optional<Solution> sol = search.not_well_separated();
    Branch branch = Branch::kNotWellSeparated;
    if (!sol) {
      sol = search.well_separated(&out.budget_hit, &out.tuples_tried);
      branch = Branch::kWellSeparated;
    }
    if (!sol && inst.k() < 3) {
      sol = search.direct();
      branch = Branch::kDirect;
      if (!sol) {
        if (auto centers = feasible_at(inst, radius)) {
          Solution exact = verify(inst, std::move(*centers), radius);
          if (exact.feasible) sol = std::move(exact);
          branch = Branch::kExact;
        }
      }
    }
    if (sol) {
      out.solution = std::move(*sol);
      out.guess = radius;
      out.branch = branch;
      return out;
    }
  }
  throw std::logic_error("solve_omega: no radius produced a feasible solution");
}

}  // namespace ckc
