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

// s-fold replication of an (n', k') base code with d' = n'-1 into an
// (n = s n', k = n - r) MDS array code with the base code's sub-packetization.
// Node i uses the base block of node i mod n' scaled by x_i^t in parity
// group t. Repair of node i reads the whole content of the s-1 nodes
// congruent to i mod n' and N/r symbols from each of the others.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msrc/codec.hpp"
#include "msrc/construction_c1.hpp"

namespace msrc::c2 {

using gf::Element;
using linalg::Mat;

struct C2Params {
  c1::C1Params base;
  std::uint32_t s = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t r = 0;
  std::size_t N = 0;
  std::vector<Element> xs;  // x_i = c^{floor(i/n') m r}

  const gf::Field& field() const { return base.field; }
  std::uint32_t d() const { return n - 1; }
};

struct ParamsOptions {
  std::optional<std::uint32_t> q;
  gf::SymbolMode mode = gf::SymbolMode::Symbol;
  // Only for constructing deliberately undersized fields in tests.
  bool enforce_field_threshold = true;
};

// Throws the base code's errors, BadDegree unless the base has d' = n'-1,
// InvalidArgument for s = 0 and FieldTooSmall when q <= s m r.
// s = 1 is accepted and reproduces the base code.
C2Params c2_params(std::uint32_t n_prime, std::uint32_t k_prime, std::uint32_t s,
                   const ParamsOptions& options = {});

enum class ScalarCondition {
  // x_i lambda_{i',u} != x_j lambda_{j',u'} for i, j in different residues mod m.
  DistinctAcrossResidues,
  // x_i lambda_{i',u} != x_j lambda_{j',u} for i != j in the same residue.
  DistinctSameResidue,
  // lambda_{i',u} != lambda_{i',u'} for u != u'.
  DistinctWithinNode,
};

const char* to_string(ScalarCondition c);

struct ScalarViolation {
  ScalarCondition condition;
  std::uint32_t i, u, j, v;

  std::string describe() const;
};

std::vector<ScalarViolation> validate_c2_conditions(const C2Params& params,
                                                    const c1::LambdaTable& base_lambdas);

class C2Code {
 public:
  explicit C2Code(C2Params params);
  C2Code(C2Params params, c1::LambdaTable base_lambdas);

  const C2Params& params() const { return params_; }
  const c1::C1Code& base() const { return base_; }
  const ParityCheckCode& parity_check() const { return pcm_; }
  const Mat& block(std::uint32_t t, std::uint32_t i) const { return pcm_.block(t, i); }
  std::vector<ScalarViolation> violations() const {
    return validate_c2_conditions(params_, base_.lambdas());
  }

 private:
  C2Params params_;
  c1::C1Code base_;
  ParityCheckCode pcm_;
};

// x_i^t * A'_{t, i mod n'}.
Mat c2_parity_block(const C2Code& code, std::uint32_t t, std::uint32_t i);

codec::RepairPlan c2_repair_plan(const C2Code& code, std::size_t failed);
// (n-1) N / r.
Rational c2_optimal_bandwidth(const C2Params& params);
// (s-1)(r-1)/(n-1).
Rational c2_epsilon(const C2Params& params);
// Download count of one repair: (s-1) N + (n-s) N / r.
std::size_t c2_expected_bandwidth(const C2Params& params);
codec::RepairReport c2_repair(const C2Code& code, const Codeword& word, std::size_t failed);

}  // namespace msrc::c2
