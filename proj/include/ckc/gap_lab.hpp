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


#ifndef CKC_GAP_LAB_HPP_
#define CKC_GAP_LAB_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ckc/clustering.hpp"
#include "ckc/instance.hpp"
#include "ckc/lp.hpp"
#include "ckc/rational.hpp"

namespace ckc {

// One group per value, each a radius-one star around its first point holding
// A+a red and A-a blue points, groups 10(k+1) apart, r = kA + A/2 and
// b = kA - A/2. Values are doubled first when their sum A is odd. Requires
// positive values and 1 <= k < values.size(); with k equal to the
// number of values the blue requirement would exceed the blue points.
Instance gen_subset_sum_instance(const std::vector<int64_t>& values, int64_t k);

// 2n four-point clusters with unit diameter, `far` apart; odd clusters (in
// 1-based order) hold three red and one blue point, even ones the reverse.
// k = n, r = b = 2n. Requires odd n >= 1 and far > 2.
Instance gen_sos_gap_instance(int64_t n, const Rational& far);

// A fractional point of the coverage relaxation together with unit-capacity
// paths through the flow network. Each path lists the item positions it takes.
struct FlowPath {
  Rational amount;
  std::vector<int> taken;
};

struct FlowCertificate {
  std::vector<Rational> x;  // per point
  std::vector<Rational> z;  // per point
  std::vector<FlowPath> paths;
};

// Two overlapping pairs of radius-one balls whose pairwise intersections hold
// five points, plus one all-red and one all-blue ball; the four clusters are
// `far` apart. k = 3, r = b = 8. `items` lists the six ball centers with the
// top path (pair with more blue, then the red ball) first.
struct FlowGapInstance {
  Instance instance;
  std::vector<int> items;
  FlowCertificate certificate;
};
FlowGapInstance gen_flow_gap_instance(const Rational& far);

// The coverage relaxation at `radius` plus a layered flow network over the
// items: node (w, x, y, z) records items decided, blue and red counted
// (capped at n) and centers taken. Variables are "e[w,x,y,z]" (skip),
// "f[w,x,y,z]" (take), "g[x,y]" (to the sink), all in [0, 1]. Flow is
// conserved at every node other than the source and sink; the take and skip
// rows of each item push one unit through every layer.
struct FlowNetworkLP {
  LinearProgram lp;
  std::vector<int> items;
  std::vector<int64_t> item_blue;
  std::vector<int64_t> item_red;
  int64_t cap = 0;
  int64_t k = 0;
  int64_t blue_req = 0;
  int64_t red_req = 0;
  std::map<std::string, int> variables;
};

FlowNetworkLP build_flow_lp(const Instance& inst, const std::vector<int>& items,
                            const Radius& radius);

struct CertificateCheck {
  bool ok = false;
  std::vector<std::string> violated;
};

// Evaluates every row exactly. Throws std::invalid_argument when a variable
// of the program is missing from `assignment` or an unknown name appears.
CertificateCheck check_certificate(const FlowNetworkLP& lp3,
                                   const std::map<std::string, Rational>& assignment);

// Full assignment (zeros included) for a certificate: x and z copied, and
// each path routed from the source through the layers to the sink.
std::map<std::string, Rational> certificate_assignment(const FlowNetworkLP& lp3,
                                                       const FlowCertificate& cert);

}  // namespace ckc

#endif  // CKC_GAP_LAB_HPP_
