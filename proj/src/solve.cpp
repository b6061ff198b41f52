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

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "ckc/approx.hpp"
#include "ckc/clustering.hpp"
#include "ckc/oracle.hpp"

namespace ckc {
namespace {

void bump(std::atomic<int64_t> SolveTrace::*field, const SolverOptions& options) {
  if (options.trace) (options.trace->*field).fetch_add(1, std::memory_order_relaxed);
}

std::vector<PointSet::block_type> blocks(const PointSet& set) {
  std::vector<PointSet::block_type> out;
  boost::to_block_range(set, std::back_inserter(out));
  return out;
}

struct DenseBundle {
  DenseDecomposition dec;
  DPTable table;
};

// Shared state for every branch tried at one radius.
class RadiusSearch {
 public:
  RadiusSearch(const Instance& inst, const Radius& radius, const SolverOptions& options)
      : inst_(inst), radius_(radius), options_(options), balls_(inst, radius) {}

  std::optional<Solution> well_separated();
  std::optional<Solution> not_well_separated();
  std::optional<Solution> direct();

 private:
  using SparseKey = std::tuple<std::vector<PointSet::block_type>, int64_t, int64_t, int64_t,
                               int64_t>;

  std::optional<Solution> try_triple(int c1, int c2, int c3);
  std::shared_ptr<const DenseBundle> dense_bundle(const PointSet& start, int64_t tau,
                                                  int64_t budget);
  std::optional<std::vector<int>> sparse(const PointSet& set, int64_t tau, int64_t k_s,
                                         int64_t b_s, int64_t r_s);
  std::optional<Solution> check(std::vector<int> centers, const Radius& radius) {
    bump(&SolveTrace::candidates, options_);
    Solution sol = verify(inst_, std::move(centers), radius);
    if (!sol.feasible) return std::nullopt;
    return sol;
  }

  const Instance& inst_;
  Radius radius_;
  SolverOptions options_;
  BallTable balls_;
  std::mutex mu_;
  std::map<SparseKey, std::optional<std::vector<int>>> sparse_cache_;
  std::map<std::tuple<std::vector<PointSet::block_type>, int64_t, int64_t>,
           std::shared_ptr<const DenseBundle>>
      dense_cache_;
};

std::shared_ptr<const DenseBundle> RadiusSearch::dense_bundle(const PointSet& start,
                                                              int64_t tau, int64_t budget) {
  auto key = std::make_tuple(blocks(start), tau, budget);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = dense_cache_.find(key); it != dense_cache_.end()) {
      bump(&SolveTrace::dp_cache_hits, options_);
      return it->second;
    }
  }
  bump(&SolveTrace::dp_tables, options_);
  DenseDecomposition dec = dense_decompose(balls_, start, tau);
  DPTable table = dense_dp(balls_, dec, budget);
  auto bundle = std::make_shared<const DenseBundle>(DenseBundle{std::move(dec), std::move(table)});
  std::lock_guard<std::mutex> lock(mu_);
  return dense_cache_.emplace(std::move(key), bundle).first->second;
}

std::optional<std::vector<int>> RadiusSearch::sparse(const PointSet& set, int64_t tau,
                                                     int64_t k_s, int64_t b_s, int64_t r_s) {
  SparseKey key{blocks(set), tau, k_s, b_s, r_s};
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = sparse_cache_.find(key); it != sparse_cache_.end()) {
      bump(&SolveTrace::sparse_cache_hits, options_);
      return it->second;
    }
  }
  bump(&SolveTrace::sparse_calls, options_);
  auto centers = algorithm_A_s(balls_, set, tau, k_s, b_s, r_s);
  std::lock_guard<std::mutex> lock(mu_);
  return sparse_cache_.emplace(std::move(key), std::move(centers)).first->second;
}

std::optional<Solution> RadiusSearch::try_triple(int c1, int c2, int c3) {
  bump(&SolveTrace::guesses, options_);
  const PhaseOneResult first = phase_one(balls_, c1, c2, c3);
  const std::vector<int> picked = first.picked_centers();
  const int64_t budget = inst_.k() - static_cast<int64_t>(picked.size());
  if (budget < 0) return std::nullopt;
  const auto bundle = dense_bundle(first.remaining[3], first.tau, budget);
  const Radius doubled = radius_.scaled(2);
  const int64_t blue_left = inst_.req(kBlue) - first.blue_in_guess;
  const int64_t red_left = inst_.req(kRed) - first.red_in_guess;
  for (int64_t k_d = 0; k_d <= budget; ++k_d) {
    for (const auto& [b_d, r_d] : bundle->table.frontier(k_d)) {
      const int64_t k_s = budget - k_d;
      const int64_t b_s = std::max<int64_t>(0, blue_left - b_d);
      const int64_t r_s = std::max<int64_t>(0, red_left - r_d);
      auto sparse_centers = sparse(bundle->dec.sparse, first.tau, k_s, b_s, r_s);
      if (!sparse_centers) continue;
      auto dense_centers = algorithm_A_d(bundle->table, PhaseTwoGuess{k_d, b_d, r_d});
      if (!dense_centers) continue;
      std::vector<int> centers = picked;
      centers.insert(centers.end(), dense_centers->begin(), dense_centers->end());
      centers.insert(centers.end(), sparse_centers->begin(), sparse_centers->end());
      if (auto sol = check(std::move(centers), doubled)) return sol;
    }
  }
  return std::nullopt;
}

std::optional<Solution> RadiusSearch::well_separated() {
  if (inst_.k() < 3) return std::nullopt;
  const int64_t n = inst_.size();
  auto found = first_success(n * n * n, options_.execution, options_.jobs, [&](int64_t t) {
    return try_triple(static_cast<int>(t / (n * n)), static_cast<int>((t / n) % n),
                      static_cast<int>(t % n));
  });
  if (!found) return std::nullopt;
  return std::move(found->value);
}

std::optional<Solution> RadiusSearch::not_well_separated() {
  if (inst_.k() < 2) return std::nullopt;
  const int n = inst_.size();
  const Radius tripled = radius_.scaled(3);
  const uint32_t reach = inst_.threshold_rank(tripled);
  auto found = first_success(n, options_.execution, options_.jobs,
                             [&](int64_t idx) -> std::optional<Solution> {
    bump(&SolveTrace::outer_points, options_);
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
    Lp1Spec spec{full_set(n) - swallowed, full_set(n), inst_.k() - 2, residual, PointSet()};
    auto rest = relax_and_round(balls_, spec, Rounding::kKeepAll, kBlue);
    if (!rest) return std::nullopt;
    rest->push_back(p);
    return check(std::move(*rest), tripled);
  });
  if (!found) return std::nullopt;
  return std::move(found->value);
}

std::optional<Solution> RadiusSearch::direct() {
  auto centers = relax_and_round(balls_, full_lp1_spec(inst_), Rounding::kKeepAll, kBlue);
  if (!centers || static_cast<int64_t>(centers->size()) > inst_.k()) return std::nullopt;
  return check(std::move(*centers), radius_.scaled(2));
}

void require_two_colors(const Instance& inst) {
  if (inst.num_classes() != 2) {
    throw std::invalid_argument("two-color solver needs exactly two classes");
  }
}

bool all_zero(const Instance& inst) {
  const auto& req = inst.requirements();
  return std::all_of(req.begin(), req.end(), [](int64_t r) { return r == 0; });
}

}  // namespace

std::string branch_name(Branch branch) {
  switch (branch) {
    case Branch::kTrivial: return "trivial";
    case Branch::kNotWellSeparated: return "not_well_separated";
    case Branch::kWellSeparated: return "well_separated";
    case Branch::kDirect: return "direct";
    case Branch::kExact: return "exact";
  }
  return "unknown";
}

std::optional<Solution> solve_well_separated(const Instance& inst, const Radius& radius,
                                             const SolverOptions& options) {
  require_two_colors(inst);
  return RadiusSearch(inst, radius, options).well_separated();
}

std::optional<Solution> solve_not_well_separated(const Instance& inst, const Radius& radius,
                                                 const SolverOptions& options) {
  require_two_colors(inst);
  return RadiusSearch(inst, radius, options).not_well_separated();
}

std::optional<SolveResult> solve_at(const Instance& inst, const Radius& radius,
                                    const SolverOptions& options) {
  require_two_colors(inst);
  RadiusSearch search(inst, radius, options);
  if (auto sol = search.not_well_separated()) {
    return SolveResult{std::move(*sol), radius, Branch::kNotWellSeparated};
  }
  if (auto sol = search.well_separated()) {
    return SolveResult{std::move(*sol), radius, Branch::kWellSeparated};
  }
  if (inst.k() < 3) {
    if (auto sol = search.direct()) return SolveResult{std::move(*sol), radius, Branch::kDirect};
    if (auto centers = feasible_at(inst, radius)) {
      Solution sol = verify(inst, std::move(*centers), radius);
      if (sol.feasible) return SolveResult{std::move(sol), radius, Branch::kExact};
    }
  }
  return std::nullopt;
}

SolveResult solve_detailed(const Instance& inst, const SolverOptions& options) {
  require_two_colors(inst);
  if (all_zero(inst)) {
    Solution sol = verify(inst, {}, Radius());
    return SolveResult{std::move(sol), Radius(), Branch::kTrivial};
  }
  if (inst.k() == 0) throw std::invalid_argument("k = 0 with a positive requirement");
  const Lp1Spec whole = full_lp1_spec(inst);
  for (const Radius& radius : radius_candidates(inst)) {
    bump(&SolveTrace::radii_tried, options);
    if (!solve_lp1(BallTable(inst, radius), whole)) {
      bump(&SolveTrace::radii_pruned, options);
      continue;
    }
    if (auto result = solve_at(inst, radius, options)) return std::move(*result);
  }
  throw std::logic_error("solve: no radius produced a feasible solution");
}

Solution solve(const Instance& inst, const SolverOptions& options) {
  return solve_detailed(inst, options).solution;
}

std::optional<Solution> pseudo_approx(const Instance& inst, const Radius& radius) {
  const BallTable balls(inst, radius);
  auto centers = relax_and_round(balls, full_lp1_spec(inst), Rounding::kKeepAll, kBlue);
  if (!centers) return std::nullopt;
  Solution sol = verify(inst, std::move(*centers), radius.scaled(2));
  sol.feasible = static_cast<int64_t>(sol.centers.size()) <= inst.k() + 1;
  for (int c = 0; c < inst.num_classes(); ++c) {
    if (sol.covered[c] < inst.req(c)) sol.feasible = false;
  }
  if (!sol.feasible) return std::nullopt;
  return sol;
}

std::optional<Solution> pseudo_solve(const Instance& inst) {
  for (const Radius& radius : radius_candidates(inst)) {
    if (auto sol = pseudo_approx(inst, radius)) return sol;
  }
  return std::nullopt;
}

}  // namespace ckc
