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

#ifndef CKC_RATIONAL_HPP_
#define CKC_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ckc {

using Rational = mpq_class;

// Parses "p/q", "p" or a decimal-free integer string. Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms; integers print without the "/1".
std::string format_rational(const Rational& value);

// Exact square root when `value` is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

bool is_integer(const Rational& value);

// A nonnegative length stored through its square, so that Euclidean
// distances between integer points compare exactly.
class Radius {
 public:
  Radius() = default;

  static Radius from_value(const Rational& value);
  static Radius from_squared(const Rational& squared);

  const Rational& squared() const { return squared_; }

  // The radius multiplied by a nonnegative integer factor.
  Radius scaled(int64_t factor) const;

  std::optional<Rational> exact_value() const { return exact_sqrt(squared_); }

  // "p/q" when rational, otherwise "sqrt(p/q)".
  std::string to_string() const;
  static Radius parse(std::string_view text);

  // this <= factor * other
  bool at_most_times(const Radius& other, int64_t factor) const;

  friend bool operator==(const Radius& a, const Radius& b) {
    return a.squared_ == b.squared_;
  }
  friend std::strong_ordering operator<=>(const Radius& a, const Radius& b) {
    const int c = cmp(a.squared_, b.squared_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  explicit Radius(Rational squared) : squared_(std::move(squared)) {}
  Rational squared_{0};
};

}  // namespace ckc

#endif  // CKC_RATIONAL_HPP_
