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

#include "ckc/approx.hpp"

#include <algorithm>
#include <stdexcept>

#include "ckc/clustering.hpp"

namespace ckc {

std::vector<int> PhaseOneResult::picked_centers() const {
  std::vector<int> out(picked.begin(), picked.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PointSet gain(const BallTable& balls, int p, int q, const PointSet& within) {
  const int n = balls.size();
  if (p < 0 || p >= n || q < 0 || q >= n) throw std::invalid_argument("gain: index out of range");
  if (!balls.ball(p).test(static_cast<size_t>(q))) {
    throw std::invalid_argument("gain: q is not in the ball at p");
  }
  return (balls.flower(q) - balls.ball(p)) & balls.instance().class_members(kRed) & within;
}

PointSet gain(const Instance& inst, const Radius& radius, int p, int q,
              const PointSet& within) {
  return gain(BallTable(inst, radius), p, q, within);
}

PhaseOneResult phase_one(const BallTable& balls, int c1, int c2, int c3) {
  const Instance& inst = balls.instance();
  PhaseOneResult out;
  out.guessed = {c1, c2, c3};
  out.remaining[0] = full_set(inst.size());
  out.guess_region = empty_set(inst.size());
  for (int i = 0; i < 3; ++i) {
    const int c = out.guessed[i];
    const PointSet& current = out.remaining[i];
    int best = -1;
    int64_t best_gain = -1;
    const PointSet options = balls.ball(c) & current;
    for (size_t q = options.find_first(); q != PointSet::npos; q = options.find_next(q)) {
      const int64_t g = static_cast<int64_t>(gain(balls, c, static_cast<int>(q), current).count());
      if (g > best_gain) {
        best_gain = g;
        best = static_cast<int>(q);
      }
    }
    if (best < 0) {
      best = c;
      best_gain = static_cast<int64_t>(gain(balls, c, c, current).count());
    }
    out.picked[i] = best;
    out.gains[i] = best_gain;
    out.remaining[i + 1] = current - balls.flower(best);
    out.guess_region |= balls.ball(c);
  }
  out.tau = out.gains[2];
  const auto counts = class_counts(inst, out.guess_region);
  out.red_in_guess = counts[kRed];
  out.blue_in_guess = counts[kBlue];
  return out;
}

DenseDecomposition dense_decompose(const BallTable& balls, const PointSet& start,
                                   int64_t tau) {
  const PointSet& red = balls.instance().class_members(kRed);
  DenseDecomposition dec;
  dec.tau = tau;
  dec.sparse = start;
  while (true) {
    const PointSet red_left = dec.sparse & red;
    int dense = -1;
    for (size_t j = dec.sparse.find_first(); j != PointSet::npos; j = dec.sparse.find_next(j)) {
      if (static_cast<int64_t>((balls.ball(static_cast<int>(j)) & red_left).count()) > 2 * tau) {
        dense = static_cast<int>(j);
        break;
      }
    }
    if (dense < 0) break;
    DenseStep step;
    step.point = dense;
    step.removed = empty_set(balls.size());
    const PointSet core = balls.ball(dense) & red_left;
    for (size_t i = dec.sparse.find_first(); i != PointSet::npos; i = dec.sparse.find_next(i)) {
      const PointSet& b = balls.ball(static_cast<int>(i));
      if (static_cast<int64_t>((b & core).count()) > tau) {
        step.group.push_back(static_cast<int>(i));
        step.removed |= b;
      }
    }
    step.removed &= dec.sparse;
    dec.sparse -= step.removed;
    dec.steps.push_back(std::move(step));
  }
  dec.dense = start - dec.sparse;
  return dec;
}

DPTable::DPTable(std::vector<std::vector<DenseItem>> groups, int64_t max_count)
    : groups_(std::move(groups)) {
  for (const auto& group : groups_) {
    int64_t b = 0;
    int64_t r = 0;
    for (const auto& item : group) {
      b = std::max(b, item.blue);
      r = std::max(r, item.red);
    }
    max_blue_ += b;
    max_red_ += r;
  }
  max_count_ = std::clamp<int64_t>(max_count, 0, static_cast<int64_t>(groups_.size()));
  const size_t cells = (groups_.size() + 1) * static_cast<size_t>(max_blue_ + 1) *
                       static_cast<size_t>(max_red_ + 1) * static_cast<size_t>(max_count_ + 1);
  reach_.assign(cells, 0);
  choice_.assign(cells, -1);
  reach_[index(0, 0, 0, 0)] = 1;
  for (size_t m = 1; m <= groups_.size(); ++m) {
    const auto& group = groups_[m - 1];
    for (int64_t b = 0; b <= max_blue_; ++b) {
      for (int64_t r = 0; r <= max_red_; ++r) {
        for (int64_t k = 0; k <= max_count_; ++k) {
          const size_t here = index(m, b, r, k);
          if (reach_[index(m - 1, b, r, k)]) {
            reach_[here] = 1;
            continue;
          }
          if (k == 0) continue;
          for (size_t t = 0; t < group.size(); ++t) {
            const DenseItem& item = group[t];
            if (item.blue > b || item.red > r) continue;
            if (reach_[index(m - 1, b - item.blue, r - item.red, k - 1)]) {
              reach_[here] = 1;
              choice_[here] = static_cast<int16_t>(t);
              break;
            }
          }
        }
      }
    }
  }
}

size_t DPTable::index(size_t m, int64_t b, int64_t r, int64_t k) const {
  return ((m * static_cast<size_t>(max_blue_ + 1) + static_cast<size_t>(b)) *
              static_cast<size_t>(max_red_ + 1) +
          static_cast<size_t>(r)) *
             static_cast<size_t>(max_count_ + 1) +
         static_cast<size_t>(k);
}

bool DPTable::at(size_t m, int64_t b, int64_t r, int64_t k) const {
  if (m > groups_.size() || b < 0 || r < 0 || k < 0 || b > max_blue_ || r > max_red_ ||
      k > max_count_) {
    return false;
  }
  return reach_[index(m, b, r, k)] != 0;
}

std::optional<std::vector<int>> DPTable::reconstruct(int64_t b, int64_t r, int64_t k) const {
  size_t m = groups_.size();
  if (!at(m, b, r, k)) return std::nullopt;
  std::vector<int> picks;
  for (; m > 0; --m) {
    const int16_t t = choice_[index(m, b, r, k)];
    if (t < 0) continue;
    const DenseItem& item = groups_[m - 1][t];
    picks.push_back(item.point);
    b -= item.blue;
    r -= item.red;
    --k;
  }
  std::reverse(picks.begin(), picks.end());
  return picks;
}

std::vector<std::pair<int64_t, int64_t>> DPTable::frontier(int64_t k) const {
  std::vector<std::pair<int64_t, int64_t>> out;  // (blue, red)
  if (k < 0 || k > max_count_) return out;
  const size_t m = groups_.size();
  int64_t best_blue = -1;
  for (int64_t r = max_red_; r >= 0; --r) {
    for (int64_t b = max_blue_; b > best_blue; --b) {
      if (reach_[index(m, b, r, k)]) {
        out.emplace_back(b, r);
        best_blue = b;
        break;
      }
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

DPTable dense_dp(const BallTable& balls, const DenseDecomposition& dec, int64_t max_count) {
  const Instance& inst = balls.instance();
  std::vector<std::vector<DenseItem>> groups;
  groups.reserve(dec.steps.size());
  for (const DenseStep& step : dec.steps) {
    std::vector<DenseItem> items;
    for (int p : step.group) {
      const auto counts = class_counts(inst, balls.ball(p) & step.removed);
      items.push_back({p, counts[kBlue], counts[kRed]});
    }
    groups.push_back(std::move(items));
  }
  return DPTable(std::move(groups), max_count);
}

std::optional<std::vector<int>> algorithm_A_d(const DPTable& table,
                                              const PhaseTwoGuess& guess) {
  return table.reconstruct(guess.b_d, guess.r_d, guess.k_d);
}

std::optional<std::vector<int>> algorithm_A_s(const BallTable& balls,
                                              const PointSet& sparse, int64_t tau,
                                              int64_t k_s, int64_t b_s, int64_t r_s) {
  if (k_s < 0) return std::nullopt;
  const PointSet& red = balls.instance().class_members(kRed);
  PointSet closed = empty_set(balls.size());
  for (size_t j = sparse.find_first(); j != PointSet::npos; j = sparse.find_next(j)) {
    const PointSet petals = balls.flower(static_cast<int>(j), sparse, sparse);
    if (static_cast<int64_t>((petals & red).count()) > 3 * tau) {
      closed |= balls.ball(static_cast<int>(j));
    }
  }
  Lp1Spec spec{sparse, sparse, k_s, {std::max<int64_t>(r_s, 0), std::max<int64_t>(b_s, 0)},
               closed & sparse};
  return relax_and_round(balls, spec, Rounding::kFractional, kBlue);
}

}  // namespace ckc
