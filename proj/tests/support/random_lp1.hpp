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

#ifndef CKC_TESTS_SUPPORT_RANDOM_LP1_HPP_
#define CKC_TESTS_SUPPORT_RANDOM_LP1_HPP_

#include <random>

#include "ckc/clustering.hpp"

namespace ckc::testing {

struct Lp1Case {
  Lp1Spec spec;
  Lp1Point point;
};

// A feasible point for the coverage relaxation built forwards: random
// fractional openings, coverage at most what the openings allow, then budget
// and requirements chosen so every row holds.
Lp1Case random_feasible_lp1(std::mt19937_64& rng, const BallTable& balls);

}  // namespace ckc::testing

#endif  // CKC_TESTS_SUPPORT_RANDOM_LP1_HPP_
