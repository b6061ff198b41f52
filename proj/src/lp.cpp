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

#include "ckc/lp.hpp"

#include <limits>
#include <stdexcept>

namespace ckc {

int LinearProgram::add_variable(std::string name) {
  if (name.empty()) name = "v" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  forced_zero_.push_back(false);
  return static_cast<int>(names_.size()) - 1;
}

void LinearProgram::check_terms(const std::vector<Term>& terms) const {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("constraint references unknown variable " +
                                  std::to_string(t.var));
    }
  }
}

void LinearProgram::add_constraint(std::vector<Term> terms, Sense sense, Rational rhs,
                                   std::string name) {
  check_terms(terms);
  rows_.push_back(Constraint{std::move(terms), sense, std::move(rhs), std::move(name)});
}

void LinearProgram::set_objective(std::vector<Term> terms) {
  check_terms(terms);
  objective_ = std::move(terms);
  has_objective_ = true;
}

void LinearProgram::force_zero(int var) {
  if (var < 0 || var >= num_variables()) {
    throw std::invalid_argument("force_zero: unknown variable");
  }
  forced_zero_[var] = true;
}

int FractionalSolution::fractional_count() const {
  int count = 0;
  for (const Rational& v : values) {
    if (sgn(v) > 0 && v < 1) ++count;
  }
  return count;
}

namespace {

// Dense bounded-variable tableau. Nonbasic columns sit at 0 or at their upper
// bound; basic values are tracked explicitly. Bland's rule on both the
// entering and the leaving choice.
class Tableau {
 public:
  enum class Kind { kStructural, kSlack, kArtificial };

  explicit Tableau(const LinearProgram& lp) {
    const int nvars = lp.num_variables();
    column_of_var_.assign(nvars, -1);
    for (int v = 0; v < nvars; ++v) {
      if (lp.is_forced_zero(v)) continue;
      column_of_var_[v] = add_column(Kind::kStructural, true);
    }
    const auto& rows = lp.constraints();
    m_ = static_cast<int>(rows.size());
    // Slack/artificial columns are appended after every structural one so the
    // Bland order prefers structurals.
    std::vector<int> slack_col(m_, -1);
    std::vector<int> slack_sign(m_, 0);
    std::vector<int> row_sign(m_, 1);
    for (int i = 0; i < m_; ++i) {
      const Constraint& row = rows[i];
      if (row.sense != Sense::kEqual) {
        slack_col[i] = add_column(Kind::kSlack, false);
        slack_sign[i] = row.sense == Sense::kLessEqual ? 1 : -1;
      }
      // Make the rhs nonnegative and, when possible, the slack +1.
      if (sgn(row.rhs) < 0 || (sgn(row.rhs) == 0 && slack_sign[i] < 0)) row_sign[i] = -1;
    }
    std::vector<int> art_col(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (slack_col[i] < 0 || slack_sign[i] * row_sign[i] < 0) {
        art_col[i] = add_column(Kind::kArtificial, false);
      }
    }
    ncols_ = static_cast<int>(kind_.size());
    table_.assign(static_cast<size_t>(m_) * ncols_, Rational(0));
    value_.assign(ncols_, Rational(0));
    at_upper_.assign(ncols_, false);
    basis_.assign(m_, -1);
    row_of_.assign(ncols_, -1);
    for (int i = 0; i < m_; ++i) {
      const Constraint& row = rows[i];
      for (const Term& t : row.terms) {
        const int col = column_of_var_[t.var];
        if (col < 0) continue;
        at(i, col) += row_sign[i] * t.coef;
      }
      if (slack_col[i] >= 0) at(i, slack_col[i]) = row_sign[i] * slack_sign[i];
      const Rational rhs = row_sign[i] * row.rhs;
      const int basic = art_col[i] >= 0 ? art_col[i] : slack_col[i];
      if (art_col[i] >= 0) at(i, art_col[i]) = 1;
      basis_[i] = basic;
      row_of_[basic] = i;
      value_[basic] = rhs;
    }
    reduced_.assign(ncols_, Rational(0));
  }

  // Returns false when the system is infeasible.
  bool phase_one() {
    std::vector<Rational> cost(ncols_, Rational(0));
    bool any = false;
    for (int c = 0; c < ncols_; ++c) {
      if (kind_[c] == Kind::kArtificial) {
        cost[c] = -1;
        any = true;
      }
    }
    if (!any) return true;
    set_cost(cost);
    run(/*allow_artificial=*/true);
    for (int c = 0; c < ncols_; ++c) {
      if (kind_[c] == Kind::kArtificial && sgn(value_[c]) > 0) return false;
    }
    drive_out_artificials();
    return true;
  }

  void phase_two(const std::vector<Term>& objective) {
    std::vector<Rational> cost(ncols_, Rational(0));
    for (const Term& t : objective) {
      const int col = column_of_var_[t.var];
      if (col >= 0) cost[col] += t.coef;
    }
    set_cost(cost);
    run(/*allow_artificial=*/false);
  }

  std::vector<Rational> variable_values() const {
    std::vector<Rational> out(column_of_var_.size(), Rational(0));
    for (size_t v = 0; v < column_of_var_.size(); ++v) {
      if (column_of_var_[v] >= 0) out[v] = value_[column_of_var_[v]];
    }
    return out;
  }

 private:
  int add_column(Kind kind, bool bounded) {
    kind_.push_back(kind);
    bounded_.push_back(bounded);
    return static_cast<int>(kind_.size()) - 1;
  }

  Rational& at(int r, int c) { return table_[static_cast<size_t>(r) * ncols_ + c]; }
  const Rational& at(int r, int c) const {
    return table_[static_cast<size_t>(r) * ncols_ + c];
  }

  void set_cost(const std::vector<Rational>& cost) {
    for (int c = 0; c < ncols_; ++c) reduced_[c] = cost[c];
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (int c = 0; c < ncols_; ++c) {
        const Rational& a = at(i, c);
        if (sgn(a) != 0) reduced_[c] -= cb * a;
      }
    }
  }

  int choose_entering(bool allow_artificial) const {
    for (int c = 0; c < ncols_; ++c) {
      if (row_of_[c] >= 0) continue;
      if (!allow_artificial && kind_[c] == Kind::kArtificial) continue;
      const int s = sgn(reduced_[c]);
      if ((s > 0 && !at_upper_[c]) || (s < 0 && at_upper_[c])) return c;
    }
    return -1;
  }

  void run(bool allow_artificial) {
    // Finite under Bland's rule; the cap only guards against a logic error.
    const long cap = 1000000;
    for (long iter = 0; iter < cap; ++iter) {
      const int q = choose_entering(allow_artificial);
      if (q < 0) return;
      const int dir = at_upper_[q] ? -1 : 1;
      int leave_row = -1;
      bool leave_to_upper = false;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        const Rational& tiq = at(i, q);
        const int s = sgn(tiq) * dir;
        if (s == 0) continue;
        const int b = basis_[i];
        Rational limit;
        bool to_upper;
        if (s > 0) {
          limit = value_[b] / (dir * tiq);
          to_upper = false;
        } else {
          if (!bounded_[b]) continue;
          limit = (1 - value_[b]) / (-dir * tiq);
          to_upper = true;
        }
        if (leave_row < 0 || limit < best || (limit == best && b < basis_[leave_row])) {
          leave_row = i;
          best = limit;
          leave_to_upper = to_upper;
        }
      }
      if (bounded_[q] && (leave_row < 0 || best > 1)) {
        // Bound flip of the entering column.
        shift(q, dir, Rational(1));
        at_upper_[q] = !at_upper_[q];
        continue;
      }
      if (leave_row < 0) throw std::logic_error("simplex: unbounded direction");
      shift(q, dir, best);
      const int leaving = basis_[leave_row];
      value_[leaving] = leave_to_upper ? Rational(1) : Rational(0);
      at_upper_[leaving] = leave_to_upper;
      pivot(leave_row, q);
    }
    throw std::logic_error("simplex: iteration cap reached");
  }

  // Moves column q by dir * step and updates the basic values.
  void shift(int q, int dir, const Rational& step) {
    if (sgn(step) == 0) return;
    const Rational delta = dir * step;
    value_[q] += delta;
    for (int i = 0; i < m_; ++i) {
      const Rational& tiq = at(i, q);
      if (sgn(tiq) != 0) value_[basis_[i]] -= tiq * delta;
    }
  }

  void pivot(int r, int q) {
    const Rational inv = 1 / at(r, q);
    for (int c = 0; c < ncols_; ++c) {
      Rational& a = at(r, c);
      if (sgn(a) != 0) a *= inv;
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Rational f = at(i, q);
      if (sgn(f) == 0) continue;
      for (int c = 0; c < ncols_; ++c) {
        const Rational& a = at(r, c);
        if (sgn(a) != 0) at(i, c) -= f * a;
      }
    }
    const Rational f = reduced_[q];
    if (sgn(f) != 0) {
      for (int c = 0; c < ncols_; ++c) {
        const Rational& a = at(r, c);
        if (sgn(a) != 0) reduced_[c] -= f * a;
      }
    }
    row_of_[basis_[r]] = -1;
    basis_[r] = q;
    row_of_[q] = r;
    at_upper_[q] = false;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_;) {
      const int b = basis_[i];
      if (kind_[b] != Kind::kArtificial) {
        ++i;
        continue;
      }
      int entering = -1;
      for (int c = 0; c < ncols_; ++c) {
        if (row_of_[c] < 0 && kind_[c] != Kind::kArtificial && sgn(at(i, c)) != 0) {
          entering = c;
          break;
        }
      }
      if (entering >= 0) {
        // Degenerate exchange: the artificial is at 0 so no value moves.
        pivot(i, entering);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  void remove_row(int r) {
    row_of_[basis_[r]] = -1;
    table_.erase(table_.begin() + static_cast<long>(r) * ncols_,
                 table_.begin() + static_cast<long>(r + 1) * ncols_);
    basis_.erase(basis_.begin() + r);
    --m_;
    for (int i = r; i < m_; ++i) row_of_[basis_[i]] = i;
  }

  int m_ = 0;
  int ncols_ = 0;
  std::vector<Kind> kind_;
  std::vector<bool> bounded_;
  std::vector<int> column_of_var_;
  std::vector<Rational> table_;
  std::vector<Rational> value_;
  std::vector<bool> at_upper_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<Rational> reduced_;
};

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& values) {
  Rational total(0);
  for (const Term& t : lp.objective()) total += t.coef * values[t.var];
  return total;
}

}  // namespace

FractionalSolution solve_feasibility(const LinearProgram& lp) {
  Tableau tableau(lp);
  FractionalSolution out;
  if (!tableau.phase_one()) return out;
  out.status = LpStatus::kFeasible;
  out.values = tableau.variable_values();
  out.extreme_point = true;
  return out;
}

FractionalSolution solve_extreme_max(const LinearProgram& lp) {
  if (!lp.has_objective()) {
    throw std::invalid_argument("solve_extreme_max requires an objective");
  }
  Tableau tableau(lp);
  FractionalSolution out;
  if (!tableau.phase_one()) return out;
  tableau.phase_two(lp.objective());
  out.status = LpStatus::kOptimal;
  out.values = tableau.variable_values();
  out.objective = objective_value(lp, out.values);
  out.extreme_point = true;
  return out;
}

std::vector<std::string> violated_rows(const LinearProgram& lp,
                                       std::span<const Rational> values) {
  if (static_cast<int>(values.size()) != lp.num_variables()) {
    throw std::invalid_argument("value vector size does not match the program");
  }
  std::vector<std::string> out;
  for (int v = 0; v < lp.num_variables(); ++v) {
    if (sgn(values[v]) < 0 || values[v] > 1 ||
        (lp.is_forced_zero(v) && sgn(values[v]) != 0)) {
      out.push_back("bound:" + lp.variable_name(v));
    }
  }
  const auto& rows = lp.constraints();
  for (size_t i = 0; i < rows.size(); ++i) {
    Rational lhs(0);
    for (const Term& t : rows[i].terms) lhs += t.coef * values[t.var];
    bool ok = true;
    switch (rows[i].sense) {
      case Sense::kLessEqual: ok = lhs <= rows[i].rhs; break;
      case Sense::kGreaterEqual: ok = lhs >= rows[i].rhs; break;
      case Sense::kEqual: ok = lhs == rows[i].rhs; break;
    }
    if (!ok) {
      out.push_back(rows[i].name.empty() ? "row#" + std::to_string(i) : rows[i].name);
    }
  }
  return out;
}

}  // namespace ckc
