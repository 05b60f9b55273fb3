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
#include <vector>

#include "msrc/linalg.hpp"

namespace msrc {

// An (n, k) array code in parity-check form: sum_i A_{t,i} f_i = 0 for
// every t < r, with N x N blocks A_{t,i}.
class ParityCheckCode {
 public:
  // blocks is row-major in (t, i): blocks[t * n + i].
  ParityCheckCode(gf::Field field, std::size_t n, std::size_t k, std::size_t N,
                  std::vector<linalg::Mat> blocks);

  const gf::Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t r() const { return n_ - k_; }
  std::size_t N() const { return N_; }
  const linalg::Mat& block(std::size_t t, std::size_t i) const { return blocks_.at(t * n_ + i); }

  // Block matrix (A_{t,i}) for t < r and i in nodes, in the given column order.
  linalg::Mat columns(const std::vector<std::size_t>& nodes) const;

 private:
  gf::Field field_;
  std::size_t n_;
  std::size_t k_;
  std::size_t N_;
  std::vector<linalg::Mat> blocks_;
};

struct Codeword {
  std::vector<linalg::Vec> nodes;
};

}  // namespace msrc
