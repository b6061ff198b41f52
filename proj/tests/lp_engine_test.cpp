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
#include <random>

#include "ckc/lp.hpp"
#include "support/vertex_oracle.hpp"

namespace ckc {
namespace {

Rational Q(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

TEST(Feasibility, UnreachableLowerBound) {
  LinearProgram lp;
  const int x = lp.add_variable("x1");
  lp.add_constraint({{x, Q(1)}}, Sense::kGreaterEqual, Q(2));
  EXPECT_EQ(solve_feasibility(lp).status, LpStatus::kInfeasible);
}

TEST(Feasibility, NoRowsGivesZeros) {
  LinearProgram lp;
  lp.add_variable();
  lp.add_variable();
  const FractionalSolution sol = solve_feasibility(lp);
  ASSERT_EQ(sol.status, LpStatus::kFeasible);
  EXPECT_EQ(sol.values, (std::vector<Rational>{Q(0), Q(0)}));
}

TEST(Feasibility, EqualityAndForcedZero) {
  LinearProgram lp;
  const int a = lp.add_variable();
  const int b = lp.add_variable();
  lp.add_constraint({{a, Q(1)}, {b, Q(1)}}, Sense::kEqual, Q(3, 2));
  FractionalSolution sol = solve_feasibility(lp);
  ASSERT_TRUE(sol.has_point());
  EXPECT_TRUE(satisfies(lp, sol.values));
  lp.force_zero(b);
  EXPECT_EQ(solve_feasibility(lp).status, LpStatus::kInfeasible);
}

TEST(Feasibility, MalformedRowThrows) {
  LinearProgram lp;
  lp.add_variable();
  EXPECT_THROW(lp.add_constraint({{3, Q(1)}}, Sense::kLessEqual, Q(1)), std::invalid_argument);
}

TEST(ExtremeMax, SingleForcedVariable) {
  LinearProgram lp;
  const int a = lp.add_variable("y_a");
  lp.set_objective({{a, Q(5)}});
  lp.add_constraint({{a, Q(3)}}, Sense::kGreaterEqual, Q(3));
  lp.add_constraint({{a, Q(1)}}, Sense::kLessEqual, Q(1));
  const FractionalSolution sol = solve_extreme_max(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.values[a], Q(1));
  EXPECT_EQ(*sol.objective, Q(5));
}

TEST(ExtremeMax, TwoClustersSplitHalf) {
  LinearProgram lp;
  const int a = lp.add_variable("y_a");
  const int b = lp.add_variable("y_b");
  lp.set_objective({{a, Q(4)}});
  lp.add_constraint({{b, Q(4)}}, Sense::kGreaterEqual, Q(2));
  lp.add_constraint({{a, Q(1)}, {b, Q(1)}}, Sense::kLessEqual, Q(1));
  const FractionalSolution sol = solve_extreme_max(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.values[a], Q(1, 2));
  EXPECT_EQ(sol.values[b], Q(1, 2));
  EXPECT_EQ(*sol.objective, Q(2));
  EXPECT_TRUE(sol.extreme_point);
  EXPECT_EQ(sol.fractional_count(), 2);
}

TEST(ExtremeMax, InfeasibleReported) {
  LinearProgram lp;
  const int a = lp.add_variable();
  lp.set_objective({{a, Q(1)}});
  lp.add_constraint({{a, Q(1)}}, Sense::kGreaterEqual, Q(2));
  EXPECT_EQ(solve_extreme_max(lp).status, LpStatus::kInfeasible);
  LinearProgram none;
  none.add_variable();
  EXPECT_THROW(solve_extreme_max(none), std::invalid_argument);
}

TEST(Violations, NamedRowsAndBounds) {
  LinearProgram lp;
  const int a = lp.add_variable("a");
  lp.add_constraint({{a, Q(1)}}, Sense::kGreaterEqual, Q(1, 2), "half");
  EXPECT_EQ(violated_rows(lp, std::vector<Rational>{Q(1, 4)}), (std::vector<std::string>{"half"}));
  EXPECT_EQ(violated_rows(lp, std::vector<Rational>{Q(2)}), (std::vector<std::string>{"bound:a"}));
  EXPECT_TRUE(violated_rows(lp, std::vector<Rational>{Q(1)}).empty());
}

// A random program shaped like the cluster program: one covering row on the
// second class, a budget row, and the first class as objective.
LinearProgram random_cluster_program(std::mt19937_64& rng, int* rows_out = nullptr) {
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_int_distribution<int> count(0, 6);
  const int m = size(rng);
  LinearProgram lp;
  std::vector<Term> objective, cover, budget;
  int64_t total = 0;
  for (int j = 0; j < m; ++j) {
    const int v = lp.add_variable();
    const int r = count(rng);
    const int b = count(rng);
    total += b;
    if (r) objective.push_back({v, Q(r)});
    if (b) cover.push_back({v, Q(b)});
    budget.push_back({v, Q(1)});
  }
  lp.set_objective(objective);
  const int64_t k = std::uniform_int_distribution<int64_t>(0, m)(rng);
  const int64_t need = std::uniform_int_distribution<int64_t>(0, total)(rng);
  lp.add_constraint(cover, Sense::kGreaterEqual, Q(need), "cover");
  lp.add_constraint(budget, Sense::kLessEqual, Q(k), "budget");
  if (rows_out) *rows_out = 2;
  return lp;
}

TEST(ExtremeMax, MatchesVertexEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    int rows = 0;
    const LinearProgram lp = random_cluster_program(rng, &rows);
    const FractionalSolution sol = solve_extreme_max(lp);
    const auto expected = testing::vertex_enum_max(lp);
    if (!expected) {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    EXPECT_EQ(*sol.objective, *expected);
    EXPECT_TRUE(satisfies(lp, sol.values));
    EXPECT_LE(sol.fractional_count(), rows);
  }
}

TEST(Feasibility, StableUnderRowPermutationAndRenaming) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const LinearProgram lp = random_cluster_program(rng);
    const bool feasible = solve_feasibility(lp).has_point();
    // Reverse rows and variable order.
    const int m = lp.num_variables();
    LinearProgram mirror;
    for (int v = 0; v < m; ++v) mirror.add_variable("w" + std::to_string(v));
    auto rows = lp.constraints();
    std::reverse(rows.begin(), rows.end());
    for (auto row : rows) {
      for (Term& t : row.terms) t.var = m - 1 - t.var;
      mirror.add_constraint(row.terms, row.sense, row.rhs);
    }
    const FractionalSolution other = solve_feasibility(mirror);
    EXPECT_EQ(other.has_point(), feasible);
    if (other.has_point()) EXPECT_TRUE(satisfies(mirror, other.values));
  }
}

TEST(Feasibility, RandomDenseSystemsAgreeWithEnumeration) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 120; ++trial) {
    LinearProgram lp;
    const int m = 1 + static_cast<int>(rng() % 5);
    for (int v = 0; v < m; ++v) lp.add_variable();
    const int rows = 1 + static_cast<int>(rng() % 3);
    for (int r = 0; r < rows; ++r) {
      std::vector<Term> terms;
      for (int v = 0; v < m; ++v) {
        if (int c = coef(rng)) terms.push_back({v, Q(c)});
      }
      const Sense sense = static_cast<Sense>(rng() % 3);
      lp.add_constraint(terms, sense, Q(coef(rng), 1 + static_cast<long>(rng() % 3)));
    }
    if (rng() % 4 == 0) lp.force_zero(0);
    const FractionalSolution sol = solve_feasibility(lp);
    EXPECT_EQ(sol.has_point(), testing::vertex_enum_max(lp).has_value());
    if (sol.has_point()) EXPECT_TRUE(satisfies(lp, sol.values));
  }
}

}  // namespace
}  // namespace ckc
