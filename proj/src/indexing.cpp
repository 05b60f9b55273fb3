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
#include "msrc/indexing.hpp"

#include <string>

namespace msrc::indexing {

WaryContext::WaryContext(std::uint32_t w, std::uint32_t m) : w_(w), m_(m), N_(1) {
  if (w < 2 || m < 1) {
    throw Error(ErrorCode::InvalidArgument, "w-ary context needs w >= 2 and m >= 1");
  }
  place_.assign(m, 1);
  for (std::uint32_t j = 0; j < m; ++j) {
    if (N_ > (std::size_t{1} << 32) / w) {
      throw Error(ErrorCode::TooLarge, "w^m exceeds 2^32");
    }
    N_ *= w;
  }
  for (std::uint32_t j = m; j-- > 1;) place_[j - 1] = place_[j] * w;
}

void WaryContext::check_index(std::size_t a, std::size_t bound) const {
  if (a >= bound) {
    throw Error(ErrorCode::OutOfRange,
                "index " + std::to_string(a) + " outside [0," + std::to_string(bound) + ")");
  }
}

void WaryContext::check_position(std::uint32_t i, std::uint32_t u) const {
  if (i >= m_ || u >= w_) {
    throw Error(ErrorCode::OutOfRange, "digit position " + std::to_string(i) + " or value " +
                                           std::to_string(u) + " out of range");
  }
}

std::vector<std::uint32_t> WaryContext::digits(std::size_t a) const {
  check_index(a, N_);
  std::vector<std::uint32_t> out(m_);
  for (std::uint32_t j = 0; j < m_; ++j) out[j] = static_cast<std::uint32_t>(a / place_[j] % w_);
  return out;
}

std::size_t WaryContext::from_digits(const std::vector<std::uint32_t>& digits) const {
  if (digits.size() != m_) throw Error(ErrorCode::OutOfRange, "wrong digit count");
  std::size_t a = 0;
  for (std::uint32_t j = 0; j < m_; ++j) {
    if (digits[j] >= w_) throw Error(ErrorCode::OutOfRange, "digit out of range");
    a += place_[j] * digits[j];
  }
  return a;
}

std::uint32_t WaryContext::digit(std::size_t a, std::uint32_t i) const {
  check_index(a, N_);
  check_position(i, 0);
  return static_cast<std::uint32_t>(a / place_[i] % w_);
}

std::size_t WaryContext::replace_digit(std::size_t a, std::uint32_t i, std::uint32_t u) const {
  check_index(a, N_);
  check_position(i, u);
  return a - place_[i] * digit(a, i) + place_[i] * u;
}

std::size_t WaryContext::insert_digit(std::size_t a, std::uint32_t i, std::uint32_t u) const {
  check_index(a, N_ / w_);
  check_position(i, u);
  // Digits of a at positions >= i (in the shorter expansion) keep their
  // place value; the more significant ones shift up by one position.
  const std::size_t low = a % place_[i];
  const std::size_t high = a / place_[i];
  return (high * w_ + u) * place_[i] + low;
}

std::vector<std::size_t> WaryContext::v_row_map(std::uint32_t i, std::uint32_t u) const {
  check_position(i, u);
  std::vector<std::size_t> out(N_ / w_);
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = insert_digit(a, i, u);
  return out;
}

linalg::Mat WaryContext::v_matrix(std::uint32_t i, std::uint32_t u, const gf::Field& field) const {
  const auto map = v_row_map(i, u);
  linalg::Mat out(field, map.size(), N_);
  for (std::size_t a = 0; a < map.size(); ++a) out(a, map[a]) = field.one();
  return out;
}

}  // namespace msrc::indexing
