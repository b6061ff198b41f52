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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "ckc/multicolor.hpp"
#include "ckc/oracle.hpp"
#include "support/random_instances.hpp"
#include "support/random_lp1.hpp"

namespace ckc {
namespace {

using testing::line_instance;
using testing::random_instance;
using testing::RandomSpec;

// Every selection with at most one item per group, summed.
void enumerate_sums(const std::vector<std::vector<GroupDp::Item>>& groups, size_t m,
                    std::vector<int64_t>& sum, std::vector<std::vector<int64_t>>& out) {
  if (m == groups.size()) {
    out.push_back(sum);
    return;
  }
  enumerate_sums(groups, m + 1, sum, out);
  for (const auto& item : groups[m]) {
    for (size_t d = 0; d < sum.size(); ++d) sum[d] += item.value[d];
    enumerate_sums(groups, m + 1, sum, out);
    for (size_t d = 0; d < sum.size(); ++d) sum[d] -= item.value[d];
  }
}

TEST(GroupDp, MatchesEnumerationWithThreeClasses) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = std::uniform_int_distribution<int>(0, 4)(rng);
    std::vector<std::vector<GroupDp::Item>> groups(m);
    ItemGroups plain(m);
    int point = 0;
    for (int g = 0; g < m; ++g) {
      const int items = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int t = 0; t < items; ++t) {
        std::vector<int64_t> value{1};
        for (int c = 0; c < 3; ++c) value.push_back(std::uniform_int_distribution<int>(0, 3)(rng));
        groups[g].push_back({point++, value});
        plain[g].push_back(value);
      }
    }
    const int64_t cap = std::uniform_int_distribution<int>(0, 4)(rng);
    const GroupDp table(groups, cap, 4);
    std::vector<std::vector<int64_t>> sums;
    std::vector<int64_t> zero(4, 0);
    enumerate_sums(groups, 0, zero, sums);
    for (const auto& sum : sums) {
      const bool within = sum[0] <= cap;
      EXPECT_EQ(table.reachable(groups.size(), sum), within);
      EXPECT_EQ(group_knapsack_enum(plain, sum), true);
      if (!within) continue;
      const auto picks = table.reconstruct(sum);
      ASSERT_TRUE(picks.has_value());
      std::vector<int64_t> again(4, 0);
      for (int p : *picks) {
        for (const auto& group : groups) {
          for (const auto& item : group) {
            if (item.point != p) continue;
            for (size_t d = 0; d < 4; ++d) again[d] += item.value[d];
          }
        }
      }
      EXPECT_EQ(again, sum);
    }
    // Unreachable cells agree with the enumeration oracle as well.
    for (int c = 0; c <= cap; ++c) {
      for (int a = 0; a <= 4; ++a) {
        const std::vector<int64_t> probe{c, a, 2, 1};
        EXPECT_EQ(table.reachable(groups.size(), probe), group_knapsack_enum(plain, probe));
      }
    }
    for (int64_t count = 0; count <= cap; ++count) {
      const auto front = table.frontier(count);
      EXPECT_TRUE(std::is_sorted(front.begin(), front.end()));
      for (const auto& sum : sums) {
        if (sum[0] != count) continue;
        const bool covered = std::any_of(front.begin(), front.end(), [&](const auto& f) {
          for (size_t d = 0; d < f.size(); ++d) {
            if (f[d] < sum[d + 1]) return false;
          }
          return true;
        });
        EXPECT_TRUE(covered);
      }
    }
  }
}

TEST(GroupDp, FrontierMatchesTwoClassTable) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = std::uniform_int_distribution<int>(0, 5)(rng);
    std::vector<std::vector<GroupDp::Item>> generic(m);
    std::vector<std::vector<DenseItem>> pairs(m);
    int point = 0;
    for (int g = 0; g < m; ++g) {
      const int items = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int t = 0; t < items; ++t) {
        const int64_t red = std::uniform_int_distribution<int>(0, 4)(rng);
        const int64_t blue = std::uniform_int_distribution<int>(0, 4)(rng);
        generic[g].push_back({point, {1, red, blue}});
        pairs[g].push_back({point, blue, red});
        ++point;
      }
    }
    const int64_t cap = std::uniform_int_distribution<int>(0, m)(rng);
    const GroupDp table(generic, cap, 3);
    const DPTable reference(pairs, cap);
    for (int64_t k = 0; k <= cap; ++k) {
      const auto front = table.frontier(k);
      const auto expected = reference.frontier(k);
      ASSERT_EQ(front.size(), expected.size());
      for (size_t i = 0; i < front.size(); ++i) {
        EXPECT_EQ(front[i], (std::vector<int64_t>{expected[i].second, expected[i].first}));
        EXPECT_EQ(table.reconstruct({k, front[i][0], front[i][1]}),
                  reference.reconstruct(expected[i].first, expected[i].second, k));
      }
    }
  }
}

TEST(GuessChains, TwoClassesMatchPhaseOne) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{4, 9, 1, 4, 2, 12});
    const auto radii = radius_candidates(inst);
    const Radius radius = radii[std::uniform_int_distribution<size_t>(0, radii.size() - 1)(rng)];
    const BallTable balls(inst, radius);
    std::uniform_int_distribution<int> pick(0, inst.size() - 1);
    const int c1 = pick(rng), c2 = pick(rng), c3 = pick(rng);
    const PhaseOneResult one = phase_one(balls, c1, c2, c3);
    const ChainGuess chains = guess_chains(balls, {c1, c2, c3}, 1, 3);
    EXPECT_EQ(chains.picked, (std::vector<int>{one.picked[0], one.picked[1], one.picked[2]}));
    EXPECT_EQ(chains.remaining, one.remaining[3]);
    EXPECT_EQ(chains.guess_region, one.guess_region);
    EXPECT_EQ(chains.tau[kRed], one.tau);
    EXPECT_EQ(chains.in_guess[kRed], one.red_in_guess);
    EXPECT_EQ(chains.in_guess[kBlue], one.blue_in_guess);
  }
}

TEST(GuessChains, RejectsWrongLength) {
  const Instance inst = line_instance({0, 1, 2}, {0, 1, 2}, 1, {0, 0, 0});
  const BallTable balls(inst, Radius::from_value(Rational(1)));
  EXPECT_THROW(guess_chains(balls, {0, 1, 2}, 2, 6), std::invalid_argument);
}

TEST(DenseDecomposeOmega, TwoClassesMatchSingleThreshold) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{3, 10, 1, 4, 2, 10});
    const auto radii = radius_candidates(inst);
    const Radius radius = radii[std::uniform_int_distribution<size_t>(0, radii.size() - 1)(rng)];
    const BallTable balls(inst, radius);
    PointSet start = empty_set(inst.size());
    for (int i = 0; i < inst.size(); ++i) {
      if (rng() % 4 != 0) start.set(static_cast<size_t>(i));
    }
    const int64_t tau = std::uniform_int_distribution<int>(0, 2)(rng);
    const DenseDecomposition ref = dense_decompose(balls, start, tau);
    for (DenseRule rule : {DenseRule::kDenseColor, DenseRule::kAllColors}) {
      const OmegaDense got = dense_decompose_omega(balls, start, {tau, 0}, 1, rule);
      ASSERT_EQ(got.steps.size(), ref.steps.size());
      for (size_t s = 0; s < ref.steps.size(); ++s) {
        EXPECT_EQ(got.steps[s].point, ref.steps[s].point);
        EXPECT_EQ(got.steps[s].group, ref.steps[s].group);
        EXPECT_EQ(got.steps[s].removed, ref.steps[s].removed);
        EXPECT_EQ(got.steps[s].dense_class, kRed);
      }
      EXPECT_EQ(got.sparse, ref.sparse);
      EXPECT_EQ(got.dense, ref.dense);
    }
  }
}

TEST(DenseDecomposeOmega, InvariantsWithThreeClasses) {
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{3, 10, 1, 4, 3, 10});
    const auto radii = radius_candidates(inst);
    const Radius radius = radii[std::uniform_int_distribution<size_t>(0, radii.size() - 1)(rng)];
    const BallTable balls(inst, radius);
    const std::vector<int64_t> tau{std::uniform_int_distribution<int>(0, 2)(rng),
                                   std::uniform_int_distribution<int>(0, 2)(rng), 0};
    for (DenseRule rule : {DenseRule::kDenseColor, DenseRule::kAllColors}) {
      const OmegaDense dec = dense_decompose_omega(balls, full_set(inst.size()), tau, 2, rule);
      PointSet live = full_set(inst.size());
      for (const OmegaDenseStep& step : dec.steps) {
        ASSERT_TRUE(step.dense_class == 0 || step.dense_class == 1);
        const auto heavy = (balls.ball(step.point) & live &
                            inst.class_members(step.dense_class)).count();
        EXPECT_GT(static_cast<int64_t>(heavy), 2 * tau[step.dense_class]);
        EXPECT_TRUE(std::find(step.group.begin(), step.group.end(), step.point) !=
                    step.group.end());
        EXPECT_TRUE(step.removed.is_subset_of(live));
        EXPECT_TRUE(step.removed.any());
        live -= step.removed;
      }
      EXPECT_EQ(live, dec.sparse);
      EXPECT_EQ(dec.sparse | dec.dense, full_set(inst.size()));
      EXPECT_TRUE((dec.sparse & dec.dense).none());
      for (size_t p = dec.sparse.find_first(); p != PointSet::npos; p = dec.sparse.find_next(p)) {
        for (int c = 0; c < 2; ++c) {
          const auto heavy = (balls.ball(static_cast<int>(p)) & dec.sparse &
                              inst.class_members(c)).count();
          EXPECT_LE(static_cast<int64_t>(heavy), 2 * tau[c]);
        }
      }
    }
  }
}

TEST(PseudoOmega, TwoClassesMatchDropOnePipeline) {
  std::mt19937_64 rng(76);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{2, 10, 1, 4, 2, 15});
    for (const Radius& radius : radius_candidates(inst)) {
      const BallTable balls(inst, radius);
      const auto expected =
          relax_and_round(balls, full_lp1_spec(inst), Rounding::kFractional, kBlue);
      EXPECT_EQ(pseudo_approx_omega(inst, radius), expected);
    }
  }
}

TEST(PseudoOmega, ThreeClassBounds) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{3, 10, 1, 4, 3, 20});
    const OracleResult opt = exact_opt(inst);
    const auto detail = pseudo_approx_omega_detailed(inst, opt.radius, -1);
    ASSERT_TRUE(detail.has_value());
    EXPECT_LE(static_cast<int64_t>(detail->centers.size()), inst.k());
    const Solution sol = verify(inst, detail->centers, opt.radius.scaled(2));
    const int classes = inst.num_classes();
    EXPECT_GE(sol.covered[classes - 1], inst.req(classes - 1));
    const BallTable balls(inst, opt.radius);
    for (int c = 0; c + 1 < classes; ++c) {
      int64_t heaviest = 0;
      for (int j = 0; j < inst.size(); ++j) {
        if (detail->point.z[j] > 0) {
          heaviest = std::max<int64_t>(
              heaviest, (balls.flower(j) & inst.class_members(c)).count());
        }
      }
      EXPECT_GE(sol.covered[c], inst.req(c) - (classes - 1) * heaviest);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(SecondRelaxation, AtMostOneFractionalPerClass) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{3, 10, 1, 4, 3, 10});
    const auto radii = radius_candidates(inst);
    const Radius radius = radii[std::uniform_int_distribution<size_t>(0, radii.size() - 1)(rng)];
    const BallTable balls(inst, radius);
    const testing::Lp1Case lp1 = testing::random_feasible_lp1(rng, balls);
    const ClusterDecomposition dec = cluster(balls, lp1.spec, lp1.point);
    const FractionalSolution lp2 =
        solve_extreme_max(build_lp2(dec, lp1.spec.budget, lp1.spec.req, 0));
    ASSERT_TRUE(lp2.has_point());
    EXPECT_LE(lp2.fractional_count(), inst.num_classes());
  }
}

TEST(PseudoOmega, InfeasibleRelaxation) {
  const Instance inst = line_instance({0, 10, 20}, {0, 1, 2}, 1, {1, 1, 1});
  EXPECT_FALSE(pseudo_approx_omega(inst, Radius::from_value(Rational(1))).has_value());
}

TEST(PseudoOmega, RejectsBadFullClass) {
  const Instance inst = line_instance({0, 1}, {0, 1}, 1, {1, 1});
  EXPECT_THROW(pseudo_approx_omega(inst, Radius(), 2), std::invalid_argument);
}

TEST(SolveOmega, TwoClassesMatchApproxSolve) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{2, 10, 1, 4, 2, 20});
    const SolveResult expected = solve_detailed(inst);
    const OmegaResult got = solve_omega(inst, {});
    EXPECT_EQ(got.solution, expected.solution);
    EXPECT_EQ(got.guess, expected.guess);
    EXPECT_EQ(got.branch, expected.branch);
    EXPECT_FALSE(got.budget_hit);
  }
}

TEST(SolveOmega, ZeroRequirementsGiveRadiusZero) {
  const Instance inst = line_instance({0, 4, 9}, {0, 1, 2}, 2, {0, 0, 0});
  const OmegaResult out = solve_omega(inst, {});
  EXPECT_TRUE(out.solution.feasible);
  EXPECT_EQ(out.solution.radius, Radius());
  EXPECT_EQ(out.branch, Branch::kTrivial);
}

TEST(SolveOmega, RejectsSingleClassAndZeroBudget) {
  const Instance single = line_instance({0, 1}, {0, 0}, 1, {1});
  EXPECT_THROW(solve_omega(single, {}), std::invalid_argument);
  const Instance none = line_instance({0, 1, 2}, {0, 1, 2}, 0, {1, 0, 0});
  EXPECT_THROW(solve_omega(none, {}), std::invalid_argument);
}

TEST(SolveOmega, ThreeClassesFeasibleAndBoundedWhenExhaustive) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 12; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{3, 6, 1, 4, 3, 20});
    const OracleResult opt = exact_opt(inst);
    OmegaOptions options;
    options.guess_budget = 300;
    const OmegaResult out = solve_omega(inst, options);
    EXPECT_TRUE(out.solution.feasible);
    EXPECT_LE(static_cast<int64_t>(out.solution.centers.size()), inst.k());
    if (!out.budget_hit) {
      EXPECT_TRUE(out.solution.radius.at_most_times(opt.radius, 3));
    }
  }
}

TEST(SolveOmega, SerialAndParallelAgree) {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 8; ++trial) {
    const Instance inst = random_instance(rng, RandomSpec{3, 7, 3, 4, 3, 20});
    OmegaOptions serial;
    serial.guess_budget = 200;
    OmegaOptions parallel = serial;
    parallel.solver.execution = Execution::kParallel;
    parallel.solver.jobs = 4;
    const OmegaResult a = solve_omega(inst, serial);
    const OmegaResult b = solve_omega(inst, parallel);
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.guess, b.guess);
    EXPECT_EQ(a.branch, b.branch);
  }
}

TEST(GuessBudget, ReadsEnvironment) {
  ::setenv("CKC_GUESS_BUDGET", "123", 1);
  EXPECT_EQ(guess_budget_from_env(), 123);
  ::setenv("CKC_GUESS_BUDGET", "abc", 1);
  EXPECT_EQ(guess_budget_from_env(), 0);
  ::unsetenv("CKC_GUESS_BUDGET");
  EXPECT_EQ(guess_budget_from_env(), 0);
}

}  // namespace
}  // namespace ckc
