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

#include "ckc/rational.hpp"

#include <stdexcept>

namespace ckc {

namespace {

bool valid_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<mpz_class> exact_isqrt(const mpz_class& v) {
  if (v < 0) return std::nullopt;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
  if (root * root != v) return std::nullopt;
  return root;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const size_t slash = text.find('/');
  std::string_view num = slash == std::string_view::npos ? text : text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  num = trim(num);
  den = trim(den);
  if (!valid_integer_literal(num) || !valid_integer_literal(den)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den[0] == '+' ? den.substr(1) : den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  auto num = exact_isqrt(value.get_num());
  auto den = exact_isqrt(value.get_den());
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Radius Radius::from_value(const Rational& value) {
  if (value < 0) throw std::invalid_argument("radius must be nonnegative");
  return Radius(value * value);
}

Radius Radius::from_squared(const Rational& squared) {
  if (squared < 0) throw std::invalid_argument("squared radius must be nonnegative");
  return Radius(squared);
}

Radius Radius::scaled(int64_t factor) const {
  if (factor < 0) throw std::invalid_argument("radius scale must be nonnegative");
  Rational f(static_cast<long>(factor));
  return Radius(squared_ * f * f);
}

std::string Radius::to_string() const {
  if (auto v = exact_value()) return format_rational(*v);
  return "sqrt(" + format_rational(squared_) + ")";
}

Radius Radius::parse(std::string_view text) {
  text = trim(text);
  constexpr std::string_view kSqrt = "sqrt(";
  if (text.substr(0, kSqrt.size()) == kSqrt && !text.empty() && text.back() == ')') {
    return from_squared(parse_rational(text.substr(kSqrt.size(), text.size() - kSqrt.size() - 1)));
  }
  return from_value(parse_rational(text));
}

bool Radius::at_most_times(const Radius& other, int64_t factor) const {
  return squared_ <= other.scaled(factor).squared_;
}

}  // namespace ckc
