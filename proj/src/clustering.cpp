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

#include "ckc/clustering.hpp"

#include <algorithm>
#include <numeric>

namespace ckc {

Lp1Spec full_lp1_spec(const Instance& inst) {
  return Lp1Spec{full_set(inst.size()), full_set(inst.size()), inst.k(),
                 inst.requirements(), PointSet()};
}

namespace {

bool forced(const Lp1Spec& spec, int i) {
  return spec.forced_zero.size() > 0 && spec.forced_zero.test(static_cast<size_t>(i));
}

}  // namespace

Lp1Model build_lp1(const BallTable& balls, const Lp1Spec& spec) {
  const Instance& inst = balls.instance();
  const int n = inst.size();
  Lp1Model model;
  model.x_var.assign(n, -1);
  model.z_var.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (spec.pool.test(static_cast<size_t>(i))) {
      model.x_var[i] = model.lp.add_variable("x[" + std::to_string(i) + "]");
      if (forced(spec, i)) model.lp.force_zero(model.x_var[i]);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (spec.clients.test(static_cast<size_t>(j))) {
      model.z_var[j] = model.lp.add_variable("z[" + std::to_string(j) + "]");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (model.z_var[j] < 0) continue;
    std::vector<Term> terms;
    const PointSet near = balls.ball(j) & spec.pool;
    for (size_t i = near.find_first(); i != PointSet::npos; i = near.find_next(i)) {
      terms.push_back({model.x_var[i], Rational(1)});
    }
    terms.push_back({model.z_var[j], Rational(-1)});
    model.lp.add_constraint(std::move(terms), Sense::kGreaterEqual, Rational(0),
                            "cover[" + std::to_string(j) + "]");
  }
  std::vector<Term> budget;
  for (int i = 0; i < n; ++i) {
    if (model.x_var[i] >= 0) budget.push_back({model.x_var[i], Rational(1)});
  }
  model.lp.add_constraint(std::move(budget), Sense::kLessEqual,
                          Rational(static_cast<long>(spec.budget)), "budget");
  for (int c = 0; c < static_cast<int>(spec.req.size()); ++c) {
    if (spec.req[c] <= 0) continue;
    std::vector<Term> terms;
    const PointSet in_class = spec.clients & inst.class_members(c);
    for (size_t j = in_class.find_first(); j != PointSet::npos; j = in_class.find_next(j)) {
      terms.push_back({model.z_var[j], Rational(1)});
    }
    model.lp.add_constraint(std::move(terms), Sense::kGreaterEqual,
                            Rational(static_cast<long>(spec.req[c])),
                            "class[" + std::to_string(c + 1) + "]");
  }
  return model;
}

Lp1Point extract_lp1_point(const Lp1Model& model, const FractionalSolution& sol) {
  const size_t n = model.x_var.size();
  Lp1Point point{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0))};
  for (size_t i = 0; i < n; ++i) {
    if (model.x_var[i] >= 0) point.x[i] = sol.values[model.x_var[i]];
    if (model.z_var[i] >= 0) point.z[i] = sol.values[model.z_var[i]];
  }
  return point;
}

std::optional<Lp1Point> solve_lp1(const BallTable& balls, const Lp1Spec& spec) {
  const Lp1Model model = build_lp1(balls, spec);
  const FractionalSolution sol = solve_feasibility(model.lp);
  if (!sol.has_point()) return std::nullopt;
  return extract_lp1_point(model, sol);
}

std::vector<std::string> lp1_violations(const BallTable& balls, const Lp1Spec& spec,
                                        const Lp1Point& point) {
  const Lp1Model model = build_lp1(balls, spec);
  std::vector<Rational> values(model.lp.num_variables());
  const int n = balls.size();
  if (static_cast<int>(point.x.size()) != n || static_cast<int>(point.z.size()) != n) {
    return {"size"};
  }
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    if (model.x_var[i] >= 0) {
      values[model.x_var[i]] = point.x[i];
    } else if (sgn(point.x[i]) != 0) {
      out.push_back("x outside pool: " + std::to_string(i));
    }
    if (model.z_var[i] >= 0) {
      values[model.z_var[i]] = point.z[i];
    } else if (sgn(point.z[i]) != 0) {
      out.push_back("z outside clients: " + std::to_string(i));
    }
  }
  auto rows = violated_rows(model.lp, values);
  out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

ClusterDecomposition cluster(const BallTable& balls, const Lp1Spec& spec,
                             const Lp1Point& point) {
  if (auto bad = lp1_violations(balls, spec, point); !bad.empty()) {
    throw ContractViolation("cluster: fractional point violates LP1 (" + bad.front() + ")");
  }
  const Instance& inst = balls.instance();
  const int n = inst.size();
  ClusterDecomposition dec;
  dec.z_tilde.assign(n, Rational(0));
  PointSet remaining = spec.clients;
  while (true) {
    int best = -1;
    for (size_t j = remaining.find_first(); j != PointSet::npos; j = remaining.find_next(j)) {
      if (sgn(point.z[j]) <= 0) continue;
      if (best < 0 || point.z[j] > point.z[best]) best = static_cast<int>(j);
    }
    if (best < 0) break;
    Rational opened(0);
    const PointSet near = balls.ball(best) & spec.pool;
    for (size_t i = near.find_first(); i != PointSet::npos; i = near.find_next(i)) {
      opened += point.x[i];
    }
    if (opened > 1) opened = 1;
    PointSet cl = balls.flower(best, spec.pool, remaining);
    for (size_t j = cl.find_first(); j != PointSet::npos; j = cl.find_next(j)) {
      dec.z_tilde[j] = opened;
    }
    remaining -= cl;
    dec.centers.push_back(best);
    dec.counts.push_back(class_counts(inst, cl));
    dec.clusters.push_back(std::move(cl));
    dec.y.push_back(opened);
  }
  return dec;
}

LinearProgram build_lp2(const ClusterDecomposition& dec, int64_t budget,
                        std::span<const int64_t> req, int objective_class) {
  LinearProgram lp;
  for (int center : dec.centers) lp.add_variable("y[" + std::to_string(center) + "]");
  const int m = static_cast<int>(dec.size());
  std::vector<Term> objective;
  for (int j = 0; j < m; ++j) {
    const int64_t w = dec.counts[j][objective_class];
    if (w != 0) objective.push_back({j, Rational(static_cast<long>(w))});
  }
  lp.set_objective(std::move(objective));
  for (int c = 0; c < static_cast<int>(req.size()); ++c) {
    if (c == objective_class || req[c] <= 0) continue;
    std::vector<Term> terms;
    for (int j = 0; j < m; ++j) {
      const int64_t w = dec.counts[j][c];
      if (w != 0) terms.push_back({j, Rational(static_cast<long>(w))});
    }
    lp.add_constraint(std::move(terms), Sense::kGreaterEqual,
                      Rational(static_cast<long>(req[c])), "class[" + std::to_string(c + 1) + "]");
  }
  std::vector<Term> all;
  for (int j = 0; j < m; ++j) all.push_back({j, Rational(1)});
  lp.add_constraint(std::move(all), Sense::kLessEqual, Rational(static_cast<long>(budget)),
                    "budget");
  return lp;
}

namespace {

bool meets_objective(const FractionalSolution& lp2, int64_t objective_req) {
  return lp2.has_point() && lp2.objective &&
         *lp2.objective >= Rational(static_cast<long>(objective_req));
}

}  // namespace

std::optional<std::vector<int>> round_keep_all(const ClusterDecomposition& dec,
                                               const FractionalSolution& lp2,
                                               int64_t objective_req) {
  if (!meets_objective(lp2, objective_req)) return std::nullopt;
  std::vector<int> out;
  for (size_t j = 0; j < dec.size(); ++j) {
    if (sgn(lp2.values[j]) > 0) out.push_back(dec.centers[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> round_fractional(const ClusterDecomposition& dec,
                                                 const FractionalSolution& lp2,
                                                 int64_t objective_req,
                                                 int full_class) {
  if (!meets_objective(lp2, objective_req)) return std::nullopt;
  std::vector<int> out;
  std::vector<size_t> fractional;
  Rational mass(0);
  for (size_t j = 0; j < dec.size(); ++j) {
    const Rational& y = lp2.values[j];
    if (y == 1) {
      out.push_back(dec.centers[j]);
    } else if (sgn(y) > 0) {
      fractional.push_back(j);
      mass += y;
    }
  }
  std::sort(fractional.begin(), fractional.end(), [&](size_t a, size_t b) {
    const auto& ca = dec.counts[a];
    const auto& cb = dec.counts[b];
    if (ca[full_class] != cb[full_class]) return ca[full_class] > cb[full_class];
    for (size_t c = 0; c < ca.size(); ++c) {
      if (static_cast<int>(c) == full_class) continue;
      if (ca[c] != cb[c]) return ca[c] > cb[c];
    }
    return dec.centers[a] < dec.centers[b];
  });
  mpz_class keep;
  mpz_cdiv_q(keep.get_mpz_t(), mass.get_num_mpz_t(), mass.get_den_mpz_t());
  const size_t take = std::min(fractional.size(), static_cast<size_t>(keep.get_ui()));
  for (size_t t = 0; t < take; ++t) out.push_back(dec.centers[fractional[t]]);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> relax_and_round(const BallTable& balls,
                                                const Lp1Spec& spec, Rounding rounding,
                                                int full_class) {
  auto point = solve_lp1(balls, spec);
  if (!point) return std::nullopt;
  const ClusterDecomposition dec = cluster(balls, spec, *point);
  const LinearProgram lp2 = build_lp2(dec, spec.budget, spec.req, /*objective_class=*/0);
  const FractionalSolution sol = solve_extreme_max(lp2);
  const int64_t objective_req = spec.req.empty() ? 0 : spec.req[0];
  if (rounding == Rounding::kKeepAll) return round_keep_all(dec, sol, objective_req);
  return round_fractional(dec, sol, objective_req, full_class);
}

}  // namespace ckc
