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

// One PASS or FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "ckc/approx.hpp"
#include "ckc/gap_lab.hpp"
#include "ckc/multicolor.hpp"
#include "ckc/oracle.hpp"
#include "support/random_instances.hpp"
#include "support/random_lp1.hpp"
#include "support/vertex_oracle.hpp"

namespace ckc {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

Radius R(long v) { return Radius::from_value(Rational(v)); }

std::vector<Instance> two_color_corpus() {
  std::mt19937_64 rng(20260101);
  std::vector<Instance> out;
  for (int i = 0; i < 200; ++i) {
    out.push_back(testing::random_instance(rng, testing::RandomSpec{1, 12, 1, 4, 2, 20}));
  }
  return out;
}

std::string count_line(int good, int total, const char* what) {
  return std::to_string(good) + "/" + std::to_string(total) + " " + what;
}

Verdict approximation_ratio(const std::vector<Instance>& corpus,
                            const std::vector<OracleResult>& opts) {
  const auto start = Clock::now();
  int good = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Solution sol = solve(corpus[i]);
    const Solution again = verify(corpus[i], sol.centers, sol.radius);
    if (again.feasible && sol.radius.at_most_times(opts[i].radius, 3)) ++good;
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const int total = static_cast<int>(corpus.size());
  return {good == total && seconds < 600,
          count_line(good, total, "feasible within 3x OPT") + ", solve time " +
              std::to_string(seconds) + " s"};
}

Verdict pseudo_approximation(const std::vector<Instance>& corpus,
                             const std::vector<OracleResult>& opts) {
  int good = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Instance& inst = corpus[i];
    const auto sol = pseudo_approx(inst, opts[i].radius);
    if (!sol) continue;
    const Solution again = verify(inst, sol->centers, opts[i].radius.scaled(2));
    const bool ok = static_cast<int64_t>(again.centers.size()) <= inst.k() + 1 &&
                    again.covered[0] >= inst.req(0) && again.covered[1] >= inst.req(1) &&
                    sol->radius == opts[i].radius.scaled(2);
    good += ok;
  }
  const int total = static_cast<int>(corpus.size());
  return {good == total, count_line(good, total, "with <= k+1 centers at 2x OPT covering both")};
}

Verdict clustering_theorem() {
  std::mt19937_64 rng(303);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng);
    const auto radii = radius_candidates(inst);
    const BallTable balls(inst, radii[rng() % radii.size()]);
    const auto lp1 = testing::random_feasible_lp1(rng, balls);
    const ClusterDecomposition dec = cluster(balls, lp1.spec, lp1.point);
    PointSet seen = empty_set(inst.size());
    Rational red(0), blue(0), mass(0);
    bool ok = true;
    for (size_t t = 0; t < dec.size(); ++t) {
      const int j = dec.centers[t];
      ok = ok && sgn(lp1.point.z[j]) > 0;
      ok = ok && dec.clusters[t].is_subset_of(balls.flower(j));
      ok = ok && !dec.clusters[t].intersects(seen);
      seen |= dec.clusters[t];
      const auto counts = class_counts(inst, dec.clusters[t]);
      red += counts[0] * dec.y[t];
      blue += counts[1] * dec.y[t];
      mass += dec.y[t];
    }
    ok = ok && blue >= lp1.spec.req[1] && red >= lp1.spec.req[0] && mass <= lp1.spec.budget;
    violations += !ok;
  }
  return {violations == 0, std::to_string(violations) + " violations over 100 relaxation points"};
}

Verdict extreme_point_fractionality() {
  std::mt19937_64 rng(404);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng, testing::RandomSpec{2, 8, 1, 4, 2, 20});
    const auto radii = radius_candidates(inst);
    const BallTable balls(inst, radii[rng() % radii.size()]);
    const auto lp1 = testing::random_feasible_lp1(rng, balls);
    const ClusterDecomposition dec = cluster(balls, lp1.spec, lp1.point);
    const LinearProgram lp2 = build_lp2(dec, lp1.spec.budget, lp1.spec.req, 0);
    const FractionalSolution vertex = solve_extreme_max(lp2);
    const auto reference = testing::vertex_enum_max(lp2);
    const bool ok = vertex.status == LpStatus::kOptimal && vertex.fractional_count() <= 2 &&
                    reference && vertex.objective && *vertex.objective == *reference;
    violations += !ok;
  }
  return {violations == 0, std::to_string(violations) + " violations over 100 second programs"};
}

Verdict dp_correctness() {
  std::mt19937_64 rng(505);
  int64_t cells = 0, mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = static_cast<int>(rng() % 7);
    std::vector<std::vector<DenseItem>> groups(m);
    ItemGroups raw(m);
    int point = 0;
    for (int g = 0; g < m; ++g) {
      const int items = 1 + static_cast<int>(rng() % 4);
      for (int t = 0; t < items; ++t) {
        const int64_t b = static_cast<int64_t>(rng() % 5);
        const int64_t r = static_cast<int64_t>(rng() % 5);
        groups[g].push_back({point++, b, r});
        raw[g].push_back({1, b, r});
      }
    }
    const DPTable table(groups, m);
    for (int64_t k = 0; k <= m; ++k) {
      for (int64_t b = 0; b <= table.max_blue(); ++b) {
        for (int64_t r = 0; r <= table.max_red(); ++r) {
          ++cells;
          const bool want = group_knapsack_enum(raw, std::vector<int64_t>{k, b, r});
          if (table.at(static_cast<size_t>(m), b, r, k) != want) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " mismatches over " + std::to_string(cells) + " cells"};
}

Verdict subset_sum_reduction() {
  std::mt19937_64 rng(606);
  int agree = 0, yes = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<int64_t> values(n);
    for (auto& v : values) v = 1 + static_cast<int64_t>(rng() % 20);
    const int64_t k = 1 + static_cast<int64_t>(rng() % (n - 1));
    const int64_t total = std::accumulate(values.begin(), values.end(), int64_t{0});
    const bool dp = total % 2 == 0 && subset_sum(values, k, total / 2);
    const bool geometric = feasible_at(gen_subset_sum_instance(values, k), R(1)).has_value();
    agree += dp == geometric;
    yes += dp;
  }
  return {agree == 20, count_line(agree, 20, "agree") + " (" + std::to_string(yes) + " yes)"};
}

Verdict sos_gap() {
  bool ok = true;
  std::string detail;
  for (int64_t n : {1, 3}) {
    const Instance inst = gen_sos_gap_instance(n, Rational(100));
    const BallTable balls(inst, R(1));
    Lp1Point half{std::vector<Rational>(inst.size(), Rational(0)),
                  std::vector<Rational>(inst.size(), Rational(1, 2))};
    for (int c = 0; c < inst.size(); c += 4) half.x[c] = Rational(1, 2);
    const bool relaxed = lp1_violations(balls, full_lp1_spec(inst), half).empty() &&
                         solve_lp1(balls, full_lp1_spec(inst)).has_value();
    const OracleResult opt = exact_opt(inst);
    const Solution sol = solve(inst);
    const bool here = relaxed && opt.radius == R(100) && sol.feasible &&
                      sol.radius.at_most_times(R(100), 3);
    ok = ok && here;
    detail += "n=" + std::to_string(n) + ": relaxation " + (relaxed ? "feasible" : "infeasible") +
              " at 1, OPT " + opt.radius.to_string() + ", solve " + sol.radius.to_string() +
              (n == 1 ? "; " : "");
  }
  return {ok, detail};
}

Verdict flow_gap() {
  const FlowGapInstance gap = gen_flow_gap_instance(Rational(100));
  const FlowNetworkLP lp3 = build_flow_lp(gap.instance, gap.items, R(1));
  const auto check = check_certificate(lp3, certificate_assignment(lp3, gap.certificate));
  const bool integral = feasible_at(gap.instance, R(1)).has_value();
  const OracleResult opt = exact_opt(gap.instance);
  const bool ok = check.ok && !integral && opt.radius == R(100);
  return {ok, std::string("certificate ") + (check.ok ? "holds" : "fails") + ", radius-1 integral " +
                  (integral ? "feasible" : "infeasible") + ", OPT " + opt.radius.to_string()};
}

Verdict omega_two_equivalence() {
  std::mt19937_64 rng(808);
  int same = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = testing::random_instance(rng, testing::RandomSpec{1, 12, 1, 4, 2, 20});
    const SolveResult two = solve_detailed(inst);
    const OmegaResult any = solve_omega(inst, {});
    same += two.solution == any.solution && two.guess == any.guess && two.branch == any.branch;
  }
  return {same == 50, count_line(same, 50, "identical")};
}

Verdict omega_three_pseudo() {
  std::mt19937_64 rng(909);
  int good = 0, full_runs = 0, full_within = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testing::random_instance(rng, testing::RandomSpec{3, 10, 1, 4, 3, 20});
    const OracleResult opt = exact_opt(inst);
    const int omega = inst.num_classes();
    const auto detail = pseudo_approx_omega_detailed(inst, opt.radius, -1);
    if (!detail) continue;
    const Solution sol = verify(inst, detail->centers, opt.radius.scaled(2));
    const BallTable balls(inst, opt.radius);
    bool ok = static_cast<int64_t>(sol.centers.size()) <= inst.k() + omega - 1 &&
              sol.covered[omega - 1] >= inst.req(omega - 1);
    for (int c = 0; c + 1 < omega; ++c) {
      int64_t heaviest = 0;
      for (int j = 0; j < inst.size(); ++j) {
        if (sgn(detail->point.z[j]) > 0) {
          heaviest = std::max<int64_t>(heaviest,
                                       (balls.flower(j) & inst.class_members(c)).count());
        }
      }
      ok = ok && sol.covered[c] >= inst.req(c) - (omega - 1) * heaviest;
    }
    good += ok;
    if (inst.size() <= 6) {
      OmegaOptions options;
      options.guess_budget = 500;
      const OmegaResult full = solve_omega(inst, options);
      if (!full.budget_hit) {
        ++full_runs;
        full_within += full.solution.feasible && full.solution.radius.at_most_times(opt.radius, 3);
      }
    }
  }
  return {good == 20, count_line(good, 20, "within the pseudo-approximation bounds") +
                          "; full solver within 3x OPT on " + std::to_string(full_within) + "/" +
                          std::to_string(full_runs) + " runs that stayed inside the guess budget"};
}

}  // namespace
}  // namespace ckc

int main() {
  using namespace ckc;
  const std::vector<Instance> corpus = two_color_corpus();
  std::vector<OracleResult> opts;
  for (const Instance& inst : corpus) opts.push_back(exact_opt(inst));

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"approximation ratio", [&] { return approximation_ratio(corpus, opts); }},
      {"pseudo-approximation", [&] { return pseudo_approximation(corpus, opts); }},
      {"clustering theorem", clustering_theorem},
      {"extreme-point fractionality", extreme_point_fractionality},
      {"dense DP correctness", dp_correctness},
      {"subset-sum reduction", subset_sum_reduction},
      {"sum-of-squares gap family", sos_gap},
      {"flow gap", flow_gap},
      {"two-class equivalence", omega_two_equivalence},
      {"three-class pseudo-approximation", omega_three_pseudo},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
