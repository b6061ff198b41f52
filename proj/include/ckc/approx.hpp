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

#ifndef CKC_APPROX_HPP_
#define CKC_APPROX_HPP_

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckc/instance.hpp"
#include "ckc/parallel.hpp"

namespace ckc {

// Two-color instances: class 0 is red, class 1 is blue.
inline constexpr int kRed = 0;
inline constexpr int kBlue = 1;

// Counters filled in while solving; safe to share between workers.
struct SolveTrace {
  std::atomic<int64_t> radii_tried{0};
  std::atomic<int64_t> radii_pruned{0};
  std::atomic<int64_t> outer_points{0};     // non-well-separated branch
  std::atomic<int64_t> guesses{0};          // well-separated triples
  std::atomic<int64_t> dp_tables{0};
  std::atomic<int64_t> dp_cache_hits{0};
  std::atomic<int64_t> sparse_calls{0};
  std::atomic<int64_t> sparse_cache_hits{0};
  std::atomic<int64_t> candidates{0};       // center sets sent to verify
};

struct SolverOptions {
  Execution execution = Execution::kSerial;
  int jobs = 1;
  SolveTrace* trace = nullptr;
};

// Red points of the flower at q outside the ball at p, within `within`.
// Throws std::invalid_argument unless q is in the ball at p.
PointSet gain(const BallTable& balls, int p, int q, const PointSet& within);
PointSet gain(const Instance& inst, const Radius& radius, int p, int q,
              const PointSet& within);

struct PhaseOneResult {
  std::array<int, 3> guessed{};
  std::array<int, 3> picked{};            // q_i, in the ball of guessed[i]
  std::array<PointSet, 4> remaining;      // remaining[i] = P_{i+1}; [3] = P_4
  std::array<int64_t, 3> gains{};         // |Gain(c_i, q_i) ∩ P_i|
  PointSet guess_region;                  // union of balls at the guesses
  int64_t tau = 0;
  int64_t red_in_guess = 0;
  int64_t blue_in_guess = 0;

  // Distinct picked points, sorted.
  std::vector<int> picked_centers() const;
};

// For each guess in turn, picks q in the ball at the guess (restricted to the
// current remaining set) maximizing the red gain within that set, lowest index
// on ties, then removes the whole flower at q. An empty candidate set falls
// back to q = guess.
PhaseOneResult phase_one(const BallTable& balls, int c1, int c2, int c3);

struct DenseStep {
  int point = 0;            // the dense point j
  std::vector<int> group;   // I_j, ascending
  PointSet removed;         // D_j
};

struct DenseDecomposition {
  std::vector<DenseStep> steps;
  PointSet sparse;  // P_s
  PointSet dense;   // P_d
  int64_t tau = 0;
};

// Repeatedly removes the lowest-index point whose ball holds more than 2*tau
// red points of the sparse set, together with the balls of its group.
DenseDecomposition dense_decompose(const BallTable& balls, const PointSet& start,
                                   int64_t tau);

struct DenseItem {
  int point = 0;
  int64_t blue = 0;  // blue points of the item's ball inside its group's D_j
  int64_t red = 0;
};

// Boolean table T[m][b][r][k]: can at most one item from each of the first m
// groups be chosen so that the picks number k and cover exactly b blue and r
// red points. Backpointers prefer skipping a group, then the lowest item.
class DPTable {
 public:
  DPTable(std::vector<std::vector<DenseItem>> groups, int64_t max_count);

  size_t num_groups() const { return groups_.size(); }
  int64_t max_blue() const { return max_blue_; }
  int64_t max_red() const { return max_red_; }
  int64_t max_count() const { return max_count_; }
  const std::vector<std::vector<DenseItem>>& groups() const { return groups_; }

  // False outside the table's bounds.
  bool at(size_t m, int64_t b, int64_t r, int64_t k) const;

  // Chosen points for a reachable cell over all groups, in group order.
  std::optional<std::vector<int>> reconstruct(int64_t b, int64_t r, int64_t k) const;

  // Reachable (blue, red) pairs over all groups with exactly k picks that no
  // other reachable pair dominates in both coordinates; ascending in red.
  std::vector<std::pair<int64_t, int64_t>> frontier(int64_t k) const;

 private:
  size_t index(size_t m, int64_t b, int64_t r, int64_t k) const;

  std::vector<std::vector<DenseItem>> groups_;
  int64_t max_blue_ = 0;
  int64_t max_red_ = 0;
  int64_t max_count_ = 0;
  std::vector<uint8_t> reach_;
  std::vector<int16_t> choice_;  // -1 skip, else item position in the group
};

DPTable dense_dp(const BallTable& balls, const DenseDecomposition& dec,
                 int64_t max_count);

struct PhaseTwoGuess {
  int64_t k_d = 0;
  int64_t b_d = 0;
  int64_t r_d = 0;
};

// The k_d centers of a reachable cell, or nothing.
std::optional<std::vector<int>> algorithm_A_d(const DPTable& table,
                                              const PhaseTwoGuess& guess);

// Relaxation on the sparse set with budget k_s and requirements (r_s, b_s),
// closing every ball around a point whose flower inside the sparse set holds
// more than 3*tau red points; then clustering, the second relaxation and the
// drop-one rounding. Returns at most k_s centers, sorted.
std::optional<std::vector<int>> algorithm_A_s(const BallTable& balls,
                                              const PointSet& sparse, int64_t tau,
                                              int64_t k_s, int64_t b_s, int64_t r_s);

// Branch searches at one radius. Both return a verified feasible Solution.
std::optional<Solution> solve_well_separated(const Instance& inst, const Radius& radius,
                                             const SolverOptions& options = {});
std::optional<Solution> solve_not_well_separated(const Instance& inst,
                                                 const Radius& radius,
                                                 const SolverOptions& options = {});

enum class Branch { kTrivial, kNotWellSeparated, kWellSeparated, kDirect, kExact };
std::string branch_name(Branch branch);

struct SolveResult {
  Solution solution;
  Radius guess;  // radius at which the search succeeded
  Branch branch = Branch::kTrivial;
};

// All branches at one radius, in order; empty when none succeeds.
std::optional<SolveResult> solve_at(const Instance& inst, const Radius& radius,
                                    const SolverOptions& options = {});

// Ascending radius search; the result's radius is at most three times the
// optimum. Radii where the relaxation on the whole instance is infeasible are
// skipped. Throws std::invalid_argument for a non-two-color instance or for
// k = 0 with a positive requirement.
SolveResult solve_detailed(const Instance& inst, const SolverOptions& options = {});
Solution solve(const Instance& inst, const SolverOptions& options = {});

// Relaxation on the whole instance, clustering, then keep-all rounding; at
// most k+1 centers verified at twice the radius. `feasible` in the returned
// Solution is judged against a budget of k+1.
std::optional<Solution> pseudo_approx(const Instance& inst, const Radius& radius);
// Smallest candidate radius at which pseudo_approx succeeds.
std::optional<Solution> pseudo_solve(const Instance& inst);

}  // namespace ckc

#endif  // CKC_APPROX_HPP_
