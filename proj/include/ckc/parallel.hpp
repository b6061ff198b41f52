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

#ifndef CKC_PARALLEL_HPP_
#define CKC_PARALLEL_HPP_

#include <omp.h>

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <type_traits>
#include <utility>

namespace ckc {

enum class Execution { kSerial, kParallel };

template <typename T>
struct IndexedResult {
  int64_t index;
  T value;
};

// Smallest i in [0, count) for which fn(i) returns a value, with that value.
// The serial path is a plain loop and serves as the reference. The parallel
// path evaluates indices out of order but returns the same minimum, provided
// fn is a pure function of its index. Exceptions from fn are rethrown.
template <typename Fn>
auto first_success(int64_t count, Execution execution, int jobs, Fn&& fn)
    -> std::optional<IndexedResult<typename std::invoke_result_t<Fn&, int64_t>::value_type>> {
  using T = typename std::invoke_result_t<Fn&, int64_t>::value_type;
  if (execution == Execution::kSerial || jobs <= 1 || count <= 1) {
    for (int64_t i = 0; i < count; ++i) {
      if (auto r = fn(i)) return IndexedResult<T>{i, std::move(*r)};
    }
    return std::nullopt;
  }
  std::atomic<int64_t> best(count);
  std::mutex mu;
  std::optional<T> value;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (int64_t i = 0; i < count; ++i) {
    if (i >= best.load(std::memory_order_relaxed)) continue;
    try {
      auto r = fn(i);
      if (r) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < best.load()) {
          best.store(i);
          value = std::move(*r);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      best.store(-1);
    }
  }
  if (error) std::rethrow_exception(error);
  if (!value) return std::nullopt;
  return IndexedResult<T>{best.load(), std::move(*value)};
}

}  // namespace ckc

#endif  // CKC_PARALLEL_HPP_
