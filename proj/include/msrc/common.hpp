/*
 * Copyright 2026 The msrc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace msrc {

enum class ErrorCode {
  InvalidArgument,
  NotPrimePower,
  TooLarge,
  DivisionByZero,
  DimensionMismatch,
  Singular,
  OutOfRange,
  OddLength,
  BadDegree,
  FieldTooSmall,
  InsufficientNodes,
  BadHelperSet,
  Inconsistent,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Exact non-negative ratio, always stored in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

inline Rational operator/(const Rational& a, const Rational& b) {
  return Rational::of(a.num * b.den, a.den * b.num);
}

inline Rational operator+(const Rational& a, const Rational& b) {
  return Rational::of(a.num * b.den + b.num * a.den, a.den * b.den);
}

std::string to_string(const Rational& r);

}  // namespace msrc
