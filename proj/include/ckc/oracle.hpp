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

#ifndef CKC_ORACLE_HPP_
#define CKC_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ckc/instance.hpp"

namespace ckc {

// Raised when exhaustive search would exceed its enumeration limit.
class TractabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kOracleSubsetLimit = 1e7;

struct OracleResult {
  Radius radius;
  std::vector<int> centers;    // sorted
  int64_t sets_examined = 0;   // center sets visited at the optimal radius
};

// A feasible center set at `radius`, or nothing. Centers whose ball is
// contained in another candidate's ball are discarded first; the search then
// enumerates subsets of the survivors in index order, each new center covering
// at least one new point. Throws TractabilityError when C(m, min(k, m)) over
// the m survivors exceeds kOracleSubsetLimit.
std::optional<std::vector<int>> feasible_at(const Instance& inst, const Radius& radius,
                                            int64_t* sets_examined = nullptr);

// Smallest candidate radius admitting a feasible center set (binary search).
// Throws std::invalid_argument when no radius works (k = 0 with a positive
// requirement) and TractabilityError from feasible_at.
OracleResult exact_opt(const Instance& inst);

// True iff some k-element sub-multiset of `values` sums to `target`.
bool subset_sum(std::span<const int64_t> values, int64_t k, int64_t target);

// Each item is a value vector; picks at most one item per group and asks
// whether some selection sums exactly to `target`. At most six groups.
using ItemGroups = std::vector<std::vector<std::vector<int64_t>>>;
inline constexpr size_t kEnumGroupLimit = 6;
bool group_knapsack_enum(const ItemGroups& groups, std::span<const int64_t> target);

}  // namespace ckc

#endif  // CKC_ORACLE_HPP_
