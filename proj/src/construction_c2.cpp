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
#include "msrc/construction_c2.hpp"

#include <string>

namespace msrc::c2 {

C2Params c2_params(std::uint32_t n_prime, std::uint32_t k_prime, std::uint32_t s,
                   const ParamsOptions& options) {
  if (s == 0) throw Error(ErrorCode::InvalidArgument, "replication factor s must be >= 1");
  const C1Shape shape = c1_shape(n_prime, k_prime, n_prime == 0 ? 0 : n_prime - 1);
  const std::uint64_t threshold = gf::c2_threshold(s, shape.m, shape.r);
  std::uint32_t q = 0;
  if (options.q) {
    q = *options.q;
    if (options.enforce_field_threshold && q <= threshold) {
      throw Error(ErrorCode::FieldTooSmall, "q=" + std::to_string(q) + " must exceed s*m*r=" +
                                                std::to_string(threshold));
    }
  } else {
    q = gf::smallest_valid_q(gf::Construction::C2, n_prime, k_prime, n_prime - 1, s, options.mode);
  }
  c1::ParamsOptions base_options;
  base_options.q = q;
  base_options.mode = options.mode;
  base_options.enforce_field_threshold = options.enforce_field_threshold;

  auto base = c1::c1_params(n_prime, k_prime, n_prime - 1, base_options);
  const std::size_t N = base.N;
  C2Params params{std::move(base), s, s * n_prime, s * n_prime - shape.r, shape.r, N, {}};
  const std::int64_t step = static_cast<std::int64_t>(shape.m) * shape.r;
  for (std::uint32_t i = 0; i < params.n; ++i) {
    params.xs.push_back(params.field().primitive_pow(static_cast<std::int64_t>(i / n_prime) * step));
  }
  return params;
}

const char* to_string(ScalarCondition c) {
  switch (c) {
    case ScalarCondition::DistinctAcrossResidues: return "distinct-across-residues";
    case ScalarCondition::DistinctSameResidue: return "distinct-same-residue";
    case ScalarCondition::DistinctWithinNode: return "distinct-within-node";
  }
  return "unknown";
}

std::string ScalarViolation::describe() const {
  return std::string(to_string(condition)) + ": nodes (" + std::to_string(i) + "," +
         std::to_string(u) + ") and (" + std::to_string(j) + "," + std::to_string(v) + ")";
}

std::vector<ScalarViolation> validate_c2_conditions(const C2Params& params,
                                                    const c1::LambdaTable& base_lambdas) {
  const auto& f = params.field();
  const std::uint32_t n = params.n, r = params.r, m = params.base.m, np = params.base.n;
  if (params.xs.size() != n || base_lambdas.n() != np || base_lambdas.w() != r) {
    throw Error(ErrorCode::DimensionMismatch, "scalar or lambda table shape does not match");
  }
  auto scaled = [&](std::uint32_t i, std::uint32_t u) {
    return f.mul(params.xs[i], base_lambdas.at(i % np, u));
  };
  std::vector<ScalarViolation> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (i % m != j % m) {
        for (std::uint32_t u = 0; u < r; ++u) {
          for (std::uint32_t v = 0; v < r; ++v) {
            if (scaled(i, u) == scaled(j, v)) {
              out.push_back({ScalarCondition::DistinctAcrossResidues, i, u, j, v});
            }
          }
        }
      } else {
        for (std::uint32_t u = 0; u < r; ++u) {
          if (scaled(i, u) == scaled(j, u)) {
            out.push_back({ScalarCondition::DistinctSameResidue, i, u, j, u});
          }
        }
      }
    }
  }
  for (std::uint32_t i = 0; i < np; ++i) {
    for (std::uint32_t u = 0; u < r; ++u) {
      for (std::uint32_t v = u + 1; v < r; ++v) {
        if (base_lambdas.at(i, u) == base_lambdas.at(i, v)) {
          out.push_back({ScalarCondition::DistinctWithinNode, i, u, i, v});
        }
      }
    }
  }
  return out;
}

namespace {

ParityCheckCode build_pcm(const C2Params& params, const c1::C1Code& base) {
  const auto& f = params.field();
  std::vector<Mat> blocks;
  for (std::uint32_t t = 0; t < params.r; ++t) {
    for (std::uint32_t i = 0; i < params.n; ++i) {
      blocks.push_back(linalg::scale(base.block(t, i % params.base.n), f.pow(params.xs[i], t)));
    }
  }
  return ParityCheckCode(f, params.n, params.k, params.N, std::move(blocks));
}

}  // namespace

C2Code::C2Code(C2Params params) : C2Code(params, c1::assign_lambdas(params.base)) {}

C2Code::C2Code(C2Params params, c1::LambdaTable base_lambdas)
    : params_(std::move(params)),
      base_(params_.base, std::move(base_lambdas)),
      pcm_(build_pcm(params_, base_)) {
  if (params_.xs.size() != params_.n) {
    throw Error(ErrorCode::DimensionMismatch, "need one scalar per node");
  }
  for (auto x : params_.xs) {
    if (x.value == 0) throw Error(ErrorCode::InvalidArgument, "node scalars must be nonzero");
  }
}

Mat c2_parity_block(const C2Code& code, std::uint32_t t, std::uint32_t i) {
  if (t >= code.params().r || i >= code.params().n) {
    throw Error(ErrorCode::OutOfRange, "block index out of range");
  }
  return code.block(t, i);
}

codec::RepairPlan c2_repair_plan(const C2Code& code, std::size_t failed) {
  const auto& p = code.params();
  const auto& bp = p.base;
  if (failed >= p.n) throw Error(ErrorCode::OutOfRange, "failed node index out of range");
  const auto& f = p.field();
  const auto i = static_cast<std::uint32_t>(failed);
  const std::uint32_t ip = i % bp.n;
  const auto wary = bp.wary();
  const Mat select = c1::select_matrix(bp, ip);

  codec::RepairSetup setup;
  setup.failed = failed;
  setup.N = p.N;
  for (std::uint32_t u = 0; u < bp.w; ++u) setup.parts.push_back(wary.v_row_map(ip % bp.m, u));
  for (std::uint32_t t = 0; t < p.r; ++t) {
    setup.failed_projection.push_back(linalg::mat_mul(select, code.block(t, i)));
  }
  for (std::uint32_t j = 0; j < p.n; ++j) {
    if (j == i) continue;
    const std::uint32_t jp = j % bp.n;
    std::vector<Mat> coefficients;
    if (jp == ip) {
      // Congruent node: its whole content is downloaded.
      for (std::uint32_t t = 0; t < p.r; ++t) {
        coefficients.push_back(linalg::mat_mul(select, code.block(t, j)));
      }
      setup.helpers.push_back({j, Mat::identity(f, p.N), std::move(coefficients)});
    } else {
      for (std::uint32_t t = 0; t < p.r; ++t) {
        coefficients.push_back(linalg::scale(c1::b_matrix(bp, code.base().lambdas(), t, jp, ip),
                                             f.pow(p.xs[j], t)));
      }
      setup.helpers.push_back({j, c1::repair_matrix(bp, ip, jp), std::move(coefficients)});
    }
  }
  return codec::RepairPlan(std::move(setup));
}

Rational c2_optimal_bandwidth(const C2Params& params) {
  return Rational::of(static_cast<std::int64_t>(params.n - 1) * static_cast<std::int64_t>(params.N),
                      params.r);
}

Rational c2_epsilon(const C2Params& params) {
  return Rational::of(static_cast<std::int64_t>(params.s - 1) * (params.r - 1), params.n - 1);
}

std::size_t c2_expected_bandwidth(const C2Params& params) {
  return (params.s - 1) * params.N + (params.n - params.s) * (params.N / params.r);
}

codec::RepairReport c2_repair(const C2Code& code, const Codeword& word, std::size_t failed) {
  if (word.nodes.size() != code.params().n) {
    throw Error(ErrorCode::DimensionMismatch, "codeword must have n nodes");
  }
  return c2_repair_plan(code, failed).run(word, c2_optimal_bandwidth(code.params()));
}

}  // namespace msrc::c2
