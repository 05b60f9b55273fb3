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

// The (n = 2m, k) minimum-storage regenerating code with sub-packetization
// w^m and repair degree d = k + w - 1, for any k < d <= n-1.
//
// Node i < m carries a "coupled" parity block: upper triangular with
// off-diagonal coefficients linking index a (digit a_i = 0) to a(i, u).
// Node i >= m carries a diagonal block keyed by digit a_{i-m}. Repairing
// node i downloads N/w symbols from each helper through the partition
// V_{i mod m, u} of the standard basis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msrc/gf.hpp"
#include "msrc/indexing.hpp"
#include "msrc/linalg.hpp"
#include "msrc/parity_check.hpp"
#include "msrc/shape.hpp"

namespace msrc::c1 {

using gf::Element;
using gf::Field;
using linalg::Mat;

// Largest sub-packetization the dense engine accepts.
inline constexpr std::uint64_t kMaxSubpacketization = 4096;

struct C1Params {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::uint32_t r = 0;
  std::uint32_t w = 0;
  std::uint32_t m = 0;
  std::size_t N = 0;
  Field field;

  indexing::WaryContext wary() const { return indexing::WaryContext(w, m); }
  std::size_t repair_rows() const { return N / w; }
};

struct ParamsOptions {
  std::optional<std::uint32_t> q;
  gf::SymbolMode mode = gf::SymbolMode::Symbol;
  // Only for constructing deliberately undersized fields in tests.
  bool enforce_field_threshold = true;
};

// Throws OddLength, BadDegree, TooLarge (N above kMaxSubpacketization) or
// FieldTooSmall when an override does not exceed the field-size threshold.
C1Params c1_params(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                   const ParamsOptions& options = {});

class LambdaTable {
 public:
  LambdaTable(std::uint32_t n, std::uint32_t w) : n_(n), w_(w), values_(n * w) {}

  std::uint32_t n() const { return n_; }
  std::uint32_t w() const { return w_; }
  Element at(std::uint32_t i, std::uint32_t u) const { return values_.at(i * w_ + u); }
  void set(std::uint32_t i, std::uint32_t u, Element v) { values_.at(i * w_ + u) = v; }

  friend bool operator==(const LambdaTable&, const LambdaTable&) = default;

 private:
  std::uint32_t n_;
  std::uint32_t w_;
  std::vector<Element> values_;
};

// Powers of the primitive element: c^{i(w+2)+u} family for 2 = w < r,
// c^{i(w+1)+u} for 3 <= w < r, c^{iw+u} for w = r (which also covers w = r = 2).
LambdaTable assign_lambdas(const C1Params& params);
// The exponent of c used for lambda_{i,u}; exposed for tests and reports.
std::uint64_t lambda_exponent(const C1Params& params, std::uint32_t i, std::uint32_t u);

enum class LambdaCondition {
  // lambda_{i,u} != lambda_{j,v} for i, j in different residues mod m.
  // Needed for both the MDS property and repair.
  DistinctAcrossResidues,
  // lambda_{i,u} != lambda_{i+m,u}; needed for the MDS property.
  DistinctPairedNodes,
  // lambda_{i,u} != lambda_{i,v} for u != v; needed for repair.
  DistinctWithinNode,
  // lambda_{i,0} != lambda_{i+m,u} and lambda_{i,u} != lambda_{i+m,0};
  // needed for repair only when w < r.
  DistinctZeroDigitAcrossHalves,
};

const char* to_string(LambdaCondition c);

struct LambdaViolation {
  LambdaCondition condition;
  std::uint32_t i, u, j, v;

  std::string describe() const;
};

std::vector<LambdaViolation> validate_lambdas(const C1Params& params, const LambdaTable& table);

// N x N block A_{t,i} of the parity-check matrix.
Mat parity_block(const C1Params& params, const LambdaTable& table, std::uint32_t t,
                 std::uint32_t i);
// (N/w) x N. Select and repair matrices coincide and do not depend on t or j.
Mat select_matrix(const C1Params& params, std::uint32_t i);
Mat repair_matrix(const C1Params& params, std::uint32_t i, std::uint32_t j);
// (N/w) x (N/w) factor with select(i) * A_{t,j} = B_{t,j,i} * repair(i, j), j != i.
Mat b_matrix(const C1Params& params, const LambdaTable& table, std::uint32_t t, std::uint32_t j,
             std::uint32_t i);

// A fully built C1 code: parameters, lambda table and materialized blocks.
class C1Code {
 public:
  explicit C1Code(C1Params params);
  // Accepts any table, including ones that break the distinctness
  // conditions; validate_lambdas() reports what is broken.
  C1Code(C1Params params, LambdaTable table);

  const C1Params& params() const { return params_; }
  const LambdaTable& lambdas() const { return table_; }
  const ParityCheckCode& parity_check() const { return pcm_; }
  const Mat& block(std::uint32_t t, std::uint32_t i) const { return pcm_.block(t, i); }
  std::vector<LambdaViolation> violations() const { return validate_lambdas(params_, table_); }

 private:
  C1Params params_;
  LambdaTable table_;
  ParityCheckCode pcm_;
};

}  // namespace msrc::c1
