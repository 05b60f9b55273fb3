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

// Property checks over a constructed code: scalar conditions, MDS, the
// select/repair factorization, block structure, and a repair sweep over
// every (failed node, helper set) pair.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "msrc/codec.hpp"
#include "msrc/construction_c1.hpp"
#include "msrc/construction_c2.hpp"

namespace msrc::verify {

struct VerifyOptions {
  codec::MdsOptions mds;
  // Above this many (node, helper set) pairs the sweep samples uniformly.
  std::size_t repair_cap = 10000;
  std::uint64_t seed = 0x5eed;
  // 0 picks from MSRC_THREADS or the hardware.
  unsigned threads = 0;
};

struct Count {
  std::size_t checked = 0;
  std::size_t failed = 0;

  std::size_t passed() const { return checked - failed; }
};

struct PropertyReport {
  std::size_t lambda_violations = 0;
  codec::MdsReport mds;
  Count factorization;   // S A_{t,j} = B R over t, i != j
  Count self_identity;   // S A_{t,i} against its closed form
  Count structure;       // upper triangularity and the diagonal power law
  std::size_t repair_total = 0;  // pairs that exist, sampled or not
  Count repairs;
  std::vector<std::string> witnesses;

  bool ok() const;
  // e.g. "20/20 subsets, 30/30 repairs"
  std::string summary() const;
};

PropertyReport verify_c1(const c1::C1Code& code, const VerifyOptions& options = {});
PropertyReport verify_shortened(const codec::ShortenedCode& code, const VerifyOptions& options = {});
PropertyReport verify_c2(const c2::C2Code& code, const VerifyOptions& options = {});

}  // namespace msrc::verify
