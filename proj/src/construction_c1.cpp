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
#include "msrc/construction_c1.hpp"

#include <string>

namespace msrc::c1 {

C1Params c1_params(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                   const ParamsOptions& options) {
  const C1Shape shape = c1_shape(n, k, d);
  if (shape.N > kMaxSubpacketization) {
    throw Error(ErrorCode::TooLarge, "sub-packetization " + std::to_string(shape.w) + "^" +
                                         std::to_string(shape.m) + " exceeds " +
                                         std::to_string(kMaxSubpacketization));
  }
  std::uint32_t q = 0;
  if (options.q) {
    q = *options.q;
    const std::uint64_t threshold = gf::c1_threshold(shape.m, shape.w, shape.r);
    if (options.enforce_field_threshold && q <= threshold) {
      throw Error(ErrorCode::FieldTooSmall, "q=" + std::to_string(q) + " must exceed " +
                                                std::to_string(threshold));
    }
    if (options.mode == gf::SymbolMode::Byte && (q < 257 || !gf::is_prime(q))) {
      throw Error(ErrorCode::FieldTooSmall, "byte mode needs a prime q >= 257, got " +
                                                std::to_string(q));
    }
  } else {
    q = gf::smallest_valid_q(gf::Construction::C1, n, k, d, 1, options.mode);
  }
  return C1Params{shape.n, shape.k, shape.d,      shape.r, shape.w,
                  shape.m, static_cast<std::size_t>(shape.N), Field::make(q)};
}

std::uint64_t lambda_exponent(const C1Params& params, std::uint32_t i, std::uint32_t u) {
  const std::uint64_t w = params.w;
  const std::uint64_t m = params.m;
  if (i >= params.n || u >= w) throw Error(ErrorCode::OutOfRange, "lambda index out of range");
  const bool upper = i >= m;
  const std::uint64_t base = upper ? i - m : i;
  if (w == params.r) {
    return upper ? base * w + (u + 1) % params.r : base * w + u;
  }
  if (w == 2) {
    return upper ? base * (w + 2) + w + u : base * (w + 2) + u;
  }
  if (!upper) return base * (w + 1) + u;
  return u == 0 ? base * (w + 1) + w : base * (w + 1) + u % (w - 1) + 1;
}

LambdaTable assign_lambdas(const C1Params& params) {
  LambdaTable table(params.n, params.w);
  for (std::uint32_t i = 0; i < params.n; ++i) {
    for (std::uint32_t u = 0; u < params.w; ++u) {
      table.set(i, u,
                params.field.primitive_pow(static_cast<std::int64_t>(lambda_exponent(params, i, u))));
    }
  }
  return table;
}

const char* to_string(LambdaCondition c) {
  switch (c) {
    case LambdaCondition::DistinctAcrossResidues: return "distinct-across-residues";
    case LambdaCondition::DistinctPairedNodes: return "distinct-paired-nodes";
    case LambdaCondition::DistinctWithinNode: return "distinct-within-node";
    case LambdaCondition::DistinctZeroDigitAcrossHalves: return "distinct-zero-digit-across-halves";
  }
  return "unknown";
}

std::string LambdaViolation::describe() const {
  return std::string(to_string(condition)) + ": lambda[" + std::to_string(i) + "," +
         std::to_string(u) + "] == lambda[" + std::to_string(j) + "," + std::to_string(v) + "]";
}

std::vector<LambdaViolation> validate_lambdas(const C1Params& params, const LambdaTable& table) {
  if (table.n() != params.n || table.w() != params.w) {
    throw Error(ErrorCode::DimensionMismatch, "lambda table shape does not match the code");
  }
  const std::uint32_t n = params.n, m = params.m, w = params.w;
  std::vector<LambdaViolation> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (i % m == j % m) continue;
      for (std::uint32_t u = 0; u < w; ++u) {
        for (std::uint32_t v = 0; v < w; ++v) {
          if (table.at(i, u) == table.at(j, v)) {
            out.push_back({LambdaCondition::DistinctAcrossResidues, i, u, j, v});
          }
        }
      }
    }
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t u = 0; u < w; ++u) {
      if (table.at(i, u) == table.at(i + m, u)) {
        out.push_back({LambdaCondition::DistinctPairedNodes, i, u, i + m, u});
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t u = 0; u < w; ++u) {
      for (std::uint32_t v = u + 1; v < w; ++v) {
        if (table.at(i, u) == table.at(i, v)) {
          out.push_back({LambdaCondition::DistinctWithinNode, i, u, i, v});
        }
      }
    }
  }
  if (w < params.r) {
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t u = 0; u < w; ++u) {
        if (table.at(i, 0) == table.at(i + m, u)) {
          out.push_back({LambdaCondition::DistinctZeroDigitAcrossHalves, i, 0, i + m, u});
        }
        if (u != 0 && table.at(i, u) == table.at(i + m, 0)) {
          out.push_back({LambdaCondition::DistinctZeroDigitAcrossHalves, i, u, i + m, 0});
        }
      }
    }
  }
  return out;
}

Mat parity_block(const C1Params& params, const LambdaTable& table, std::uint32_t t,
                 std::uint32_t i) {
  if (t >= params.r || i >= params.n) throw Error(ErrorCode::OutOfRange, "block index out of range");
  const Field& f = params.field;
  const auto wary = params.wary();
  const std::uint32_t m = params.m, w = params.w;
  const std::uint32_t digit_pos = i % m;

  std::vector<Element> powers(w);
  for (std::uint32_t u = 0; u < w; ++u) powers[u] = f.pow(table.at(i, u), t);

  Mat a(f, params.N, params.N);
  for (std::size_t row = 0; row < params.N; ++row) {
    const std::uint32_t digit = wary.digit(row, digit_pos);
    a(row, row) = powers[digit];
    if (i < m && digit == 0) {
      for (std::uint32_t u = 1; u < w; ++u) {
        a(row, wary.replace_digit(row, digit_pos, u)) = f.sub(powers[0], powers[u]);
      }
    }
  }
  return a;
}

Mat select_matrix(const C1Params& params, std::uint32_t i) {
  if (i >= params.n) throw Error(ErrorCode::OutOfRange, "node index out of range");
  const auto wary = params.wary();
  Mat s(params.field, params.repair_rows(), params.N);
  const std::uint32_t last_digit = i < params.m ? 1 : params.w;
  for (std::uint32_t u = 0; u < last_digit; ++u) {
    const auto map = wary.v_row_map(i % params.m, u);
    for (std::size_t a = 0; a < map.size(); ++a) s(a, map[a]) = params.field.one();
  }
  return s;
}

Mat repair_matrix(const C1Params& params, std::uint32_t i, std::uint32_t j) {
  if (j >= params.n || j == i) {
    throw Error(ErrorCode::OutOfRange, "helper index must differ from the failed node");
  }
  return select_matrix(params, i);
}

Mat b_matrix(const C1Params& params, const LambdaTable& table, std::uint32_t t, std::uint32_t j,
             std::uint32_t i) {
  if (t >= params.r || i >= params.n || j >= params.n || i == j) {
    throw Error(ErrorCode::OutOfRange, "B factor needs t < r and distinct nodes i, j < n");
  }
  const Field& f = params.field;
  const std::uint32_t m = params.m, w = params.w;
  const std::size_t rows = params.repair_rows();
  const std::uint32_t ip = i % m, jp = j % m;
  if (ip == jp) return linalg::scale(Mat::identity(f, rows), f.pow(table.at(j, 0), t));

  // Digit j' of the failed node's (m-1)-digit row index sits at position j'
  // before the removed digit i' and at j'-1 after it.
  const indexing::WaryContext reduced(w, m - 1);
  const std::uint32_t pos = jp < ip ? jp : jp - 1;
  std::vector<Element> powers(w);
  for (std::uint32_t u = 0; u < w; ++u) powers[u] = f.pow(table.at(j, u), t);

  Mat b(f, rows, rows);
  for (std::size_t a = 0; a < rows; ++a) {
    const std::uint32_t digit = reduced.digit(a, pos);
    b(a, a) = powers[digit];
    if (j < m && digit == 0) {
      for (std::uint32_t u = 1; u < w; ++u) {
        b(a, reduced.replace_digit(a, pos, u)) = f.sub(powers[0], powers[u]);
      }
    }
  }
  return b;
}

}  // namespace msrc::c1

namespace msrc::c1 {

namespace {

ParityCheckCode build_pcm(const C1Params& params, const LambdaTable& table) {
  if (table.n() != params.n || table.w() != params.w) {
    throw Error(ErrorCode::DimensionMismatch, "lambda table shape does not match the code");
  }
  std::vector<Mat> blocks;
  blocks.reserve(static_cast<std::size_t>(params.r) * params.n);
  for (std::uint32_t t = 0; t < params.r; ++t) {
    for (std::uint32_t i = 0; i < params.n; ++i) blocks.push_back(parity_block(params, table, t, i));
  }
  return ParityCheckCode(params.field, params.n, params.k, params.N, std::move(blocks));
}

}  // namespace

C1Code::C1Code(C1Params params) : C1Code(params, assign_lambdas(params)) {}

C1Code::C1Code(C1Params params, LambdaTable table)
    : params_(std::move(params)), table_(std::move(table)), pcm_(build_pcm(params_, table_)) {}

}  // namespace msrc::c1
