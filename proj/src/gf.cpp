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
#include "msrc/gf.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "msrc/shape.hpp"

namespace msrc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OddLength: return "OddLength";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::InsufficientNodes: return "InsufficientNodes";
    case ErrorCode::BadHelperSet: return "BadHelperSet";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

C1Shape c1_shape(std::uint32_t n, std::uint32_t k, std::uint32_t d) {
  if (n % 2 != 0) {
    throw Error(ErrorCode::OddLength,
                "code length n=" + std::to_string(n) + " is odd; use a shortened code");
  }
  if (k == 0 || d <= k || d >= n) {
    throw Error(ErrorCode::BadDegree, "need 0 < k < d <= n-1, got (n,k,d)=(" +
                                          std::to_string(n) + "," + std::to_string(k) + "," +
                                          std::to_string(d) + ")");
  }
  C1Shape s;
  s.n = n;
  s.k = k;
  s.d = d;
  s.r = n - k;
  s.w = d - k + 1;
  s.m = n / 2;
  std::uint64_t N = 1;
  for (std::uint32_t i = 0; i < s.m; ++i) {
    if (N > std::numeric_limits<std::uint64_t>::max() / s.w) {
      N = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    N *= s.w;
  }
  s.N = N;
  return s;
}

}  // namespace msrc

namespace msrc::gf {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t v) {
  if (v < 2) return std::nullopt;
  const auto factors = prime_factors(v);
  if (factors.size() != 1 || factors[0] > std::numeric_limits<std::uint32_t>::max()) {
    return std::nullopt;
  }
  std::uint32_t e = 0;
  while (v > 1) {
    v /= factors[0];
    ++e;
  }
  return std::make_pair(static_cast<std::uint32_t>(factors[0]), e);
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients low to high

Poly to_poly(std::uint32_t value, std::uint32_t p, std::uint32_t e) {
  Poly out(e, 0);
  for (std::uint32_t j = 0; j < e; ++j) {
    out[j] = value % p;
    value /= p;
  }
  return out;
}

std::uint32_t from_poly(const Poly& poly, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t j = poly.size(); j-- > 0;) v = v * p + poly[j];
  return v;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo a monic-or-not divisor over GF(p).
Poly poly_mod(Poly a, const Poly& divisor, std::uint32_t p) {
  const std::size_t dd = divisor.size() - 1;
  const std::uint32_t lead_inv = inv_mod(divisor.back(), p);
  for (std::size_t i = a.size(); i-- > dd;) {
    const std::uint32_t coef = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a[i]) * lead_inv) % p);
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      const std::uint64_t sub = static_cast<std::uint64_t>(coef) * divisor[j] % p;
      a[i - dd + j] = static_cast<std::uint32_t>((a[i - dd + j] + p - sub) % p);
    }
  }
  a.resize(std::min(a.size(), dd));
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::uint32_t dg = 1; dg <= deg / 2; ++dg) {
    std::uint64_t count = 1;
    for (std::uint32_t j = 0; j < dg; ++j) count *= p;
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      Poly g = to_poly(static_cast<std::uint32_t>(lower), p, dg);
      g.push_back(1);
      const Poly rem = poly_mod(f, g, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t c) { return c == 0; })) {
        return false;
      }
    }
  }
  return true;
}

// Multiplication by schoolbook product and reduction; used only while the
// log tables are being built.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p, const Poly& modulus) {
  const std::uint32_t e = static_cast<std::uint32_t>(modulus.size() - 1);
  const Poly pa = to_poly(a, p, e);
  const Poly pb = to_poly(b, p, e);
  Poly prod(2 * e - 1, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    for (std::uint32_t j = 0; j < e; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p);
    }
  }
  Poly rem = poly_mod(prod, modulus, p);
  rem.resize(e, 0);
  return from_poly(rem, p);
}

template <typename Mul>
std::uint32_t slow_pow(std::uint32_t a, std::uint64_t t, Mul&& mul) {
  std::uint32_t result = 1;
  while (t > 0) {
    if (t & 1) result = mul(result, a);
    a = mul(a, a);
    t >>= 1;
  }
  return result;
}

template <typename Mul>
std::uint32_t find_primitive(std::uint32_t q, Mul&& mul) {
  const auto factors = prime_factors(q - 1);
  for (std::uint32_t cand = 1; cand < q; ++cand) {
    bool ok = true;
    for (const auto f : factors) {
      if (slow_pow(cand, (q - 1) / f, mul) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  throw Error(ErrorCode::Internal, "no primitive element found");
}

}  // namespace

Field Field::make(std::uint32_t q) {
  if (q > kMaxOrder) {
    throw Error(ErrorCode::TooLarge, "field order " + std::to_string(q) + " exceeds 65535");
  }
  const auto pe = prime_power(q);
  if (!pe) {
    throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  }
  auto impl = std::make_shared<Impl>();
  impl->p = pe->first;
  impl->e = pe->second;
  impl->q = q;
  const std::uint32_t p = impl->p;

  if (impl->e == 1) {
    impl->c = find_primitive(q, [p](std::uint32_t a, std::uint32_t b) {
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    });
    return Field(std::move(impl));
  }

  const std::uint32_t lower_count = q;  // p^e choices for the lower coefficients
  for (std::uint32_t lower = 0; lower < lower_count; ++lower) {
    Poly f = to_poly(lower, p, impl->e);
    f.push_back(1);
    if (f[0] != 0 && is_irreducible(f, p)) {
      impl->modulus = std::move(f);
      break;
    }
  }
  if (impl->modulus.empty()) throw Error(ErrorCode::Internal, "no irreducible modulus found");

  const Poly& modulus = impl->modulus;
  auto mul = [p, &modulus](std::uint32_t a, std::uint32_t b) { return slow_mul(a, b, p, modulus); };
  impl->c = find_primitive(q, mul);
  impl->exp.resize(q - 1);
  impl->log.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t t = 0; t + 1 < q; ++t) {
    impl->exp[t] = x;
    impl->log[x] = t;
    x = mul(x, impl->c);
  }
  return Field(std::move(impl));
}

Element Field::element(std::uint64_t v) const {
  if (v >= impl_->q) {
    throw Error(ErrorCode::OutOfRange, "symbol " + std::to_string(v) + " not in GF(" +
                                           std::to_string(impl_->q) + ")");
  }
  return Element{static_cast<std::uint32_t>(v)};
}

Element Field::add(Element a, Element b) const {
  const std::uint32_t p = impl_->p;
  if (impl_->e == 1) {
    const std::uint32_t s = a.value + b.value;
    return Element{s >= p ? s - p : s};
  }
  if (p == 2) return Element{a.value ^ b.value};
  std::uint32_t out = 0, scale = 1, x = a.value, y = b.value;
  for (std::uint32_t j = 0; j < impl_->e; ++j) {
    out += ((x % p + y % p) % p) * scale;
    x /= p;
    y /= p;
    scale *= p;
  }
  return Element{out};
}

Element Field::neg(Element a) const {
  const std::uint32_t p = impl_->p;
  if (impl_->e == 1) return Element{a.value == 0 ? 0 : p - a.value};
  if (p == 2) return a;
  std::uint32_t out = 0, scale = 1, x = a.value;
  for (std::uint32_t j = 0; j < impl_->e; ++j) {
    out += ((p - x % p) % p) * scale;
    x /= p;
    scale *= p;
  }
  return Element{out};
}

Element Field::sub(Element a, Element b) const {
  if (impl_->e == 1) {
    return Element{a.value >= b.value ? a.value - b.value : a.value + impl_->p - b.value};
  }
  return add(a, neg(b));
}

Element Field::mul(Element a, Element b) const {
  if (impl_->e == 1) {
    return Element{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value %
                                              impl_->p)};
  }
  if (a.value == 0 || b.value == 0) return zero();
  std::uint32_t t = impl_->log[a.value] + impl_->log[b.value];
  if (t >= impl_->q - 1) t -= impl_->q - 1;
  return Element{impl_->exp[t]};
}

Element Field::inv(Element a) const {
  if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (impl_->e == 1) return Element{inv_mod(a.value, impl_->p)};
  const std::uint32_t t = impl_->log[a.value];
  return Element{impl_->exp[t == 0 ? 0 : impl_->q - 1 - t]};
}

Element Field::pow(Element a, std::int64_t t) const {
  if (t == 0) return one();
  if (a.value == 0) {
    if (t < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return zero();
  }
  const std::int64_t order = impl_->q - 1;
  std::int64_t red = t % order;
  if (red < 0) red += order;
  if (impl_->e != 1) {
    return Element{impl_->exp[(impl_->log[a.value] * static_cast<std::uint64_t>(red)) % order]};
  }
  Element result = one();
  Element base = a;
  auto ut = static_cast<std::uint64_t>(red);
  while (ut > 0) {
    if (ut & 1) result = mul(result, base);
    base = mul(base, base);
    ut >>= 1;
  }
  return result;
}

Element Field::primitive_pow(std::int64_t t) const { return pow(primitive(), t); }

std::uint64_t Field::order(Element a) const {
  if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  std::uint64_t ord = impl_->q - 1;
  for (const auto f : prime_factors(ord)) {
    while (ord % f == 0 && pow(a, static_cast<std::int64_t>(ord / f)) == one()) ord /= f;
  }
  return ord;
}

std::uint64_t c1_threshold(std::uint32_t m, std::uint32_t w, std::uint32_t r) {
  if (w == r) return static_cast<std::uint64_t>(m) * w;
  if (w == 2) return static_cast<std::uint64_t>(m) * (w + 2);
  return static_cast<std::uint64_t>(m) * (w + 1);
}

std::uint64_t c2_threshold(std::uint32_t s, std::uint32_t m, std::uint32_t r) {
  return static_cast<std::uint64_t>(s) * m * r;
}

std::uint32_t smallest_valid_q(Construction construction, std::uint32_t n, std::uint32_t k,
                               std::uint32_t d, std::uint32_t s, SymbolMode mode) {
  const C1Shape shape = c1_shape(n, k, d);
  std::uint64_t threshold = 0;
  if (construction == Construction::C1) {
    threshold = c1_threshold(shape.m, shape.w, shape.r);
  } else {
    if (d != n - 1) {
      throw Error(ErrorCode::BadDegree, "the base code of C2 needs d = n-1");
    }
    if (s == 0) throw Error(ErrorCode::InvalidArgument, "replication factor s must be >= 1");
    threshold = c2_threshold(s, shape.m, shape.r);
  }
  std::uint64_t q = threshold + 1;
  if (mode == SymbolMode::Byte) q = std::max<std::uint64_t>(q, 257);
  for (; q <= kMaxOrder; ++q) {
    if (mode == SymbolMode::Byte ? is_prime(q) : prime_power(q).has_value()) {
      return static_cast<std::uint32_t>(q);
    }
  }
  throw Error(ErrorCode::TooLarge, "required field order exceeds 65535");
}

}  // namespace msrc::gf
