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

#include <random>
#include <vector>

#include "msrc/codec.hpp"

namespace msrc::testing {

inline linalg::Vec random_vec(const gf::Field& f, std::size_t len, std::mt19937_64& rng) {
  linalg::Vec v(f, len);
  for (std::size_t i = 0; i < len; ++i) v[i] = gf::Element{static_cast<std::uint32_t>(rng() % f.q())};
  return v;
}

inline std::vector<linalg::Vec> random_data(const ParityCheckCode& pcm, std::mt19937_64& rng) {
  std::vector<linalg::Vec> data;
  for (std::size_t i = 0; i < pcm.k(); ++i) data.push_back(random_vec(pcm.field(), pcm.N(), rng));
  return data;
}

inline Codeword random_codeword(const ParityCheckCode& pcm, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return codec::encode(pcm, random_data(pcm, rng));
}

// All size-k subsets of [0, n) in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Helper sets of size d for failed node i, lexicographic.
inline std::vector<std::vector<std::size_t>> helper_sets(std::size_t n, std::size_t i, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  for (auto s : subsets(n - 1, d)) {
    for (auto& x : s) x = x < i ? x : x + 1;
    out.push_back(s);
  }
  return out;
}

}  // namespace msrc::testing
