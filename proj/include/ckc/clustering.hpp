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

#ifndef CKC_CLUSTERING_HPP_
#define CKC_CLUSTERING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckc/instance.hpp"
#include "ckc/lp.hpp"

namespace ckc {

// A caller passed data that breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Coverage relaxation at the radius of a BallTable. Coverage variables z live
// on `clients`, opening variables x on `pool`:
//   sum_{i in B(j) ∩ pool} x_i >= z_j   for j in clients
//   sum x_i <= budget
//   sum_{j in clients ∩ class c} z_j >= req[c]
// with every x_i, i in forced_zero, fixed to 0.
struct Lp1Spec {
  PointSet clients;
  PointSet pool;
  int64_t budget = 0;
  std::vector<int64_t> req;
  PointSet forced_zero;  // empty bitset (size 0) means none
};

// The whole point set, no forced zeros, the instance's own k and req.
Lp1Spec full_lp1_spec(const Instance& inst);

struct Lp1Model {
  LinearProgram lp;
  std::vector<int> x_var;  // per point, -1 when not in the pool
  std::vector<int> z_var;  // per point, -1 when not a client
};

Lp1Model build_lp1(const BallTable& balls, const Lp1Spec& spec);

// Per-point x and z; zero outside pool / clients.
struct Lp1Point {
  std::vector<Rational> x;
  std::vector<Rational> z;
};

Lp1Point extract_lp1_point(const Lp1Model& model, const FractionalSolution& sol);
std::optional<Lp1Point> solve_lp1(const BallTable& balls, const Lp1Spec& spec);
std::vector<std::string> lp1_violations(const BallTable& balls, const Lp1Spec& spec,
                                        const Lp1Point& point);

struct ClusterDecomposition {
  std::vector<int> centers;                   // S, in selection order
  std::vector<PointSet> clusters;             // C_j, parallel to centers
  std::vector<std::vector<int64_t>> counts;   // per cluster, per class
  std::vector<Rational> y;                    // per center
  std::vector<Rational> z_tilde;              // per point

  size_t size() const { return centers.size(); }
};

// Repeatedly picks the remaining client with the largest z (lowest index on
// ties), opens it with y = min(1, x(B(j) ∩ pool)), and carves out its flower
// (via pool points, restricted to the remaining clients). Throws
// ContractViolation when `point` is not feasible for `spec`.
ClusterDecomposition cluster(const BallTable& balls, const Lp1Spec& spec,
                             const Lp1Point& point);

// maximize sum counts[j][objective_class] y_j
//   s.t. sum counts[j][c] y_j >= req[c] for c != objective_class (req[c] > 0)
//        sum y_j <= budget, 0 <= y <= 1.
LinearProgram build_lp2(const ClusterDecomposition& dec, int64_t budget,
                        std::span<const int64_t> req, int objective_class);

// Every center with y > 0. Empty optional when the program is infeasible or
// its optimum is below `objective_req`.
std::optional<std::vector<int>> round_keep_all(const ClusterDecomposition& dec,
                                               const FractionalSolution& lp2,
                                               int64_t objective_req);

// Keeps the integral centers and rounds up ceil(sum of fractional y) of the
// fractional ones, preferring the most points of `full_class`, then more
// points of the other classes in class order, then the lower point index. On
// a two-row vertex this keeps exactly one of at most two fractional centers.
std::optional<std::vector<int>> round_fractional(const ClusterDecomposition& dec,
                                                 const FractionalSolution& lp2,
                                                 int64_t objective_req,
                                                 int full_class);

// Two colors: red is class 0 (objective), blue is class 1 (kept in full).
inline std::optional<std::vector<int>> round_drop_one(const ClusterDecomposition& dec,
                                                      const FractionalSolution& lp2,
                                                      int64_t red_req) {
  return round_fractional(dec, lp2, red_req, /*full_class=*/1);
}

enum class Rounding { kKeepAll, kFractional };

// LP1 -> cluster -> LP2 (objective class 0) -> rounding. Empty when LP1 is
// infeasible or the rounding reports no solution.
std::optional<std::vector<int>> relax_and_round(const BallTable& balls,
                                                const Lp1Spec& spec, Rounding rounding,
                                                int full_class);

}  // namespace ckc

#endif  // CKC_CLUSTERING_HPP_
