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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "msrc/linalg.hpp"

namespace msrc::indexing {

// Base-w digit algebra on [0, w^m). Digit 0 is the most significant.
class WaryContext {
 public:
  // Throws InvalidArgument unless w >= 2, m >= 1, and w^m fits in 32 bits.
  WaryContext(std::uint32_t w, std::uint32_t m);

  std::uint32_t w() const { return w_; }
  std::uint32_t m() const { return m_; }
  std::size_t N() const { return N_; }

  std::vector<std::uint32_t> digits(std::size_t a) const;
  std::size_t from_digits(const std::vector<std::uint32_t>& digits) const;
  std::uint32_t digit(std::size_t a, std::uint32_t i) const;

  // a with digit i replaced by u.
  std::size_t replace_digit(std::size_t a, std::uint32_t i, std::uint32_t u) const;
  // For a < N/w (m-1 digits): u inserted at digit position i, giving an index < N.
  std::size_t insert_digit(std::size_t a, std::uint32_t i, std::uint32_t u) const;

  // Row map of V_{i,u}: entry a is the column holding the single 1 of row a.
  std::vector<std::size_t> v_row_map(std::uint32_t i, std::uint32_t u) const;
  // The (N/w) x N selection matrix with rows e_{g_{i,u}(a)}.
  linalg::Mat v_matrix(std::uint32_t i, std::uint32_t u, const gf::Field& field) const;

 private:
  void check_index(std::size_t a, std::size_t bound) const;
  void check_position(std::uint32_t i, std::uint32_t u) const;

  std::uint32_t w_;
  std::uint32_t m_;
  std::size_t N_;
  std::vector<std::size_t> place_;  // place_[j] = w^(m-1-j)
};

}  // namespace msrc::indexing
