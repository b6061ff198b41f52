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

#ifndef CKC_LP_HPP_
#define CKC_LP_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckc/rational.hpp"

namespace ckc {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var;
  Rational coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  Rational rhs;
  std::string name;
};

// A linear program over variables boxed in [0, 1]. Forced-zero variables are
// substituted out before solving rather than kept as rows.
class LinearProgram {
 public:
  int add_variable(std::string name = {});
  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int var) const { return names_[var]; }

  // Throws std::invalid_argument if a term references an unknown variable.
  void add_constraint(std::vector<Term> terms, Sense sense, Rational rhs,
                      std::string name = {});
  const std::vector<Constraint>& constraints() const { return rows_; }

  // Objective to maximize.
  void set_objective(std::vector<Term> terms);
  bool has_objective() const { return has_objective_; }
  const std::vector<Term>& objective() const { return objective_; }

  void force_zero(int var);
  bool is_forced_zero(int var) const { return forced_zero_[var]; }

 private:
  void check_terms(const std::vector<Term>& terms) const;

  std::vector<std::string> names_;
  std::vector<bool> forced_zero_;
  std::vector<Constraint> rows_;
  std::vector<Term> objective_;
  bool has_objective_ = false;
};

enum class LpStatus { kFeasible, kOptimal, kInfeasible };

struct FractionalSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> values;
  std::optional<Rational> objective;
  bool extreme_point = false;

  bool has_point() const { return status != LpStatus::kInfeasible; }
  // Number of values strictly between 0 and 1.
  int fractional_count() const;
};

// Phase-one simplex: a basic feasible point or a definitive infeasible.
FractionalSolution solve_feasibility(const LinearProgram& lp);

// Optimal basic solution (a vertex) of the objective. Throws
// std::invalid_argument when the program has no objective.
FractionalSolution solve_extreme_max(const LinearProgram& lp);

// Names of rows (or "bound:<var>") violated by `values`, evaluated exactly.
// Unnamed rows are reported as "row#<index>".
std::vector<std::string> violated_rows(const LinearProgram& lp,
                                       std::span<const Rational> values);

inline bool satisfies(const LinearProgram& lp, std::span<const Rational> values) {
  return violated_rows(lp, values).empty();
}

}  // namespace ckc

#endif  // CKC_LP_HPP_
