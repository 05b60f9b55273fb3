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

namespace msrc {

// Integer parameters of a C1 code, validated but without a field attached.
struct C1Shape {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::uint32_t r = 0;  // n - k
  std::uint32_t w = 0;  // d - k + 1
  std::uint32_t m = 0;  // n / 2
  std::uint64_t N = 0;  // w^m, saturated at UINT64_MAX
};

// Throws OddLength for odd n, BadDegree unless 0 < k < d <= n-1.
C1Shape c1_shape(std::uint32_t n, std::uint32_t k, std::uint32_t d);

}  // namespace msrc
