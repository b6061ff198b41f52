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

#ifndef CKC_MULTICOLOR_HPP_
#define CKC_MULTICOLOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ckc/approx.hpp"
#include "ckc/clustering.hpp"
#include "ckc/instance.hpp"

namespace ckc {

// Tuples tried per radius for three or more classes unless configured.
inline constexpr int64_t kDefaultOmegaGuessBudget = 2000;

// Reads CKC_GUESS_BUDGET; 0 when unset or not a positive integer.
int64_t guess_budget_from_env();

enum class DenseRule {
  kDenseColor,  // group by the class that made the point dense
  kAllColors,   // group only points heavy in every deficit class; the point itself always joins
};

struct OmegaOptions {
  SolverOptions solver;
  int full_class = -1;       // class kept in full when rounding; -1 means the last class
  DenseRule dense_rule = DenseRule::kAllColors;
  int64_t guess_budget = 0;  // 0: exhaustive for two classes, default cap otherwise
};

// Pseudo-approximation with any number of classes: relaxation, clustering,
// second relaxation with class 0 as objective, then rounding up the fractional
// centers with most points of `full_class`. At most k centers.
struct OmegaPseudo {
  std::vector<int> centers;
  Lp1Point point;
  ClusterDecomposition clusters;
};
std::optional<OmegaPseudo> pseudo_approx_omega_detailed(const Instance& inst,
                                                        const Radius& radius,
                                                        int full_class);
std::optional<std::vector<int>> pseudo_approx_omega(const Instance& inst, const Radius& radius,
                                                    int full_class = -1);

// Group choice table over arbitrary value vectors, kept as the set of
// reachable sums after each group. Picks at most one item per group.
class GroupDp {
 public:
  struct Item {
    int point = 0;
    std::vector<int64_t> value;  // value[0] counts picks
  };

  // `dims` is the length of every value vector.
  GroupDp(std::vector<std::vector<Item>> groups, int64_t max_count, size_t dims);

  size_t num_groups() const { return groups_.size(); }
  bool reachable(size_t prefix, const std::vector<int64_t>& sum) const;
  std::optional<std::vector<int>> reconstruct(const std::vector<int64_t>& sum) const;
  // Undominated reachable sums (over value[1..]) with value[0] == count,
  // ascending lexicographically.
  std::vector<std::vector<int64_t>> frontier(int64_t count) const;

 private:
  std::vector<std::vector<Item>> groups_;
  // layers_[m]: reachable sums after m groups -> item position (-1 = skip).
  std::vector<std::map<std::vector<int64_t>, int>> layers_;
};

struct ChainGuess {
  std::vector<int> guessed;  // all guessed centers, class chain by chain
  std::vector<int> picked;
  std::vector<int64_t> tau;  // per class; 0 for the full class
  PointSet remaining;        // after every flower is removed
  PointSet guess_region;
  std::vector<int64_t> in_guess;  // per class
};

// Guessing with one chain of `per_chain` guesses for every class other than
// `full_class`, each chain starting from the whole point set.
ChainGuess guess_chains(const BallTable& balls, const std::vector<int>& guessed,
                        int full_class, int per_chain);

struct OmegaDenseStep {
  int point = 0;
  int dense_class = 0;
  std::vector<int> group;
  PointSet removed;
};

struct OmegaDense {
  std::vector<OmegaDenseStep> steps;
  PointSet sparse;
  PointSet dense;
};

OmegaDense dense_decompose_omega(const BallTable& balls, const PointSet& start,
                                 const std::vector<int64_t>& tau, int full_class,
                                 DenseRule rule);

struct OmegaResult {
  Solution solution;
  Radius guess;
  Branch branch = Branch::kTrivial;
  bool budget_hit = false;   // some radius stopped before trying every tuple
  int64_t tuples_tried = 0;
};

// The full pipeline for any number of classes; with two classes and the
// default options it follows the two-color solver step for step.
OmegaResult solve_omega(const Instance& inst, const OmegaOptions& options = {});

}  // namespace ckc

#endif  // CKC_MULTICOLOR_HPP_
