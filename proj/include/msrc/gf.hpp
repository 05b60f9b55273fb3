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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "msrc/common.hpp"

namespace msrc::gf {

inline constexpr std::uint32_t kMaxOrder = 65535;

// A field symbol. The value is the canonical residue: for GF(p^e) the
// polynomial coefficients read as base-p digits, constant term least
// significant.
struct Element {
  std::uint32_t value = 0;

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

// GF(q), q = p^e <= 65535, with a deterministic modulus and primitive element.
// Immutable and cheap to copy; the lookup tables are shared.
class Field {
 public:
  // Smallest monic irreducible modulus (numeric order of its lower
  // coefficients) and the smallest primitive element in residue order.
  static Field make(std::uint32_t q);

  std::uint32_t p() const { return impl_->p; }
  std::uint32_t e() const { return impl_->e; }
  std::uint32_t q() const { return impl_->q; }
  bool is_prime_field() const { return impl_->e == 1; }
  // Coefficients low to high including the leading 1; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }
  Element primitive() const { return Element{impl_->c}; }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }
  // Throws OutOfRange unless v < q.
  Element element(std::uint64_t v) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  // Negative exponents are allowed for nonzero a. pow(a, 0) == 1, including a == 0.
  Element pow(Element a, std::int64_t t) const;
  // c^t, exponent reduced modulo q-1.
  Element primitive_pow(std::int64_t t) const;
  // Multiplicative order; throws DivisionByZero for 0.
  std::uint64_t order(Element a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.q() == b.q() && a.modulus() == b.modulus();
  }

 private:
  struct Impl {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint32_t q = 0;
    std::uint32_t c = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> exp;  // exp[t] = c^t, t in [0, q-1)
    std::vector<std::uint32_t> log;  // log[exp[t]] = t
  };

  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

bool is_prime(std::uint64_t v);
// (p, e) when v = p^e with e >= 1, otherwise nullopt.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t v);
// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

enum class Construction { C1, C2 };
enum class SymbolMode { Symbol, Byte };

// Field-size thresholds: the field must have q strictly greater than these.
std::uint64_t c1_threshold(std::uint32_t m, std::uint32_t w, std::uint32_t r);
std::uint64_t c2_threshold(std::uint32_t s, std::uint32_t m, std::uint32_t r);

// For C2, (n, k, d) are the base code's parameters and d must equal n-1.
// Byte mode additionally requires a prime q >= 257.
std::uint32_t smallest_valid_q(Construction construction, std::uint32_t n, std::uint32_t k,
                               std::uint32_t d, std::uint32_t s, SymbolMode mode);

}  // namespace msrc::gf
