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
#include "msrc/verify.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace msrc::verify {

using linalg::Mat;
using gf::Element;
using linalg::Vec;

namespace {

constexpr std::size_t kMaxWitnesses = 32;

void witness(PropertyReport& report, std::string what) {
  if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(std::move(what));
}

std::string node_list(const std::vector<std::size_t>& nodes) {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(nodes[i]);
  }
  return out + "}";
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (comb[pos] < n - k + pos) {
      ++comb[pos];
      for (std::size_t j = pos + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool upper_triangular(const Mat& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < r && c < a.cols(); ++c) {
      if (a(r, c).value != 0) return false;
    }
  }
  return true;
}

// blocks[t] is the t-th power family of one node: diagonal of t equals
// the diagonal of 1 raised to t.
bool power_law(const std::vector<Mat>& blocks) {
  if (blocks.size() < 2) return true;
  const auto& f = blocks[0].field();
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    for (std::size_t a = 0; a < blocks[t].rows(); ++a) {
      if (!(blocks[t](a, a) == f.pow(blocks[1](a, a), static_cast<std::int64_t>(t)))) return false;
    }
  }
  return true;
}

Codeword random_codeword(const ParityCheckCode& pcm, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& f = pcm.field();
  std::vector<Vec> data;
  for (std::size_t i = 0; i < pcm.k(); ++i) {
    Vec v(f, pcm.N());
    for (std::size_t a = 0; a < pcm.N(); ++a) v[a] = f.element(static_cast<std::uint32_t>(rng() % f.q()));
    data.push_back(std::move(v));
  }
  return codec::encode(pcm, data);
}

struct RepairCase {
  std::size_t failed;
  std::vector<std::size_t> helpers;
};

std::vector<RepairCase> repair_cases(std::size_t n, std::size_t d, std::size_t cap,
                                     std::uint64_t seed, std::size_t& total) {
  total = n * choose(n - 1, d);
  std::vector<RepairCase> out;
  auto helpers_from = [&](std::size_t i, const std::vector<std::size_t>& comb) {
    std::vector<std::size_t> h;
    for (auto c : comb) h.push_back(c < i ? c : c + 1);
    return h;
  };
  if (total <= cap) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> comb(d);
      for (std::size_t j = 0; j < d; ++j) comb[j] = j;
      do {
        out.push_back({i, helpers_from(i, comb)});
      } while (next_combination(comb, n - 1));
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(n - 1);
  for (std::size_t c = 0; c < cap; ++c) {
    const std::size_t i = rng() % n;
    for (std::size_t j = 0; j < pool.size(); ++j) pool[j] = j;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::size_t> comb(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(d));
    std::sort(comb.begin(), comb.end());
    out.push_back({i, helpers_from(i, comb)});
  }
  return out;
}

struct CaseResult {
  bool ok = false;
  std::string why;
};

CaseResult check_repair(const codec::RepairPlan& plan, const Codeword& word, std::size_t expected) {
  const auto report = plan.run(word, Rational::of(1, 1));
  if (!(report.recovered == word.nodes[plan.failed()])) return {false, "wrong content"};
  if (report.bandwidth != expected) {
    return {false, "bandwidth " + std::to_string(report.bandwidth) + " != " + std::to_string(expected)};
  }
  for (const auto& term : plan.bypass()) {
    if (!(report.byproducts.at(term.node) == linalg::mat_vec(term.projection, word.nodes[term.node]))) {
      return {false, "byproduct of node " + std::to_string(term.node) + " differs"};
    }
  }
  return {true, {}};
}

void sweep(PropertyReport& report, const std::vector<RepairCase>& cases, unsigned threads,
           const std::function<codec::RepairPlan(const RepairCase&)>& plan_for, const Codeword& word,
           std::size_t expected) {
  std::vector<CaseResult> results(cases.size());
  detail::parallel_for(cases.size(), threads, [&](std::size_t c) {
    try {
      results[c] = check_repair(plan_for(cases[c]), word, expected);
    } catch (const Error& e) {
      results[c] = {false, e.what()};
    }
  });
  for (std::size_t c = 0; c < cases.size(); ++c) {
    ++report.repairs.checked;
    if (!results[c].ok) {
      ++report.repairs.failed;
      witness(report, "repair of node " + std::to_string(cases[c].failed) + " from " +
                          node_list(cases[c].helpers) + ": " + results[c].why);
    }
  }
}

void record_mds(PropertyReport& report, const ParityCheckCode& pcm, const VerifyOptions& options) {
  report.mds = codec::verify_mds(pcm, options.mds);
  for (const auto& subset : report.mds.failures) {
    witness(report, "singular parity columns " + node_list(subset));
  }
}

// Closed form of S_{i,t} A_{t,i} in terms of the partition V_{i,u}.
Mat self_product(const c1::C1Params& params, const c1::LambdaTable& table, std::uint32_t t,
                 std::uint32_t i) {
  const auto& f = params.field;
  const auto wary = params.wary();
  Mat out(f, params.repair_rows(), params.N);
  const Element zero_term = f.pow(table.at(i, 0), t);
  for (std::uint32_t u = 0; u < params.w; ++u) {
    const Element lam = f.pow(table.at(i, u), t);
    Element coeff;
    if (i < params.m) {
      coeff = u == 0 ? zero_term : f.sub(zero_term, lam);
    } else {
      coeff = lam;
    }
    out = linalg::add(out, linalg::scale(wary.v_matrix(i % params.m, u, f), coeff));
  }
  return out;
}

void check_c1_algebra(PropertyReport& report, const c1::C1Code& code) {
  const auto& p = code.params();
  const auto& table = code.lambdas();
  for (std::uint32_t i = 0; i < p.n; ++i) {
    const Mat select = c1::select_matrix(p, i);
    std::vector<Mat> family;
    for (std::uint32_t t = 0; t < p.r; ++t) family.push_back(code.block(t, i));
    for (std::uint32_t t = 0; t < p.r; ++t) {
      ++report.structure.checked;
      if (!upper_triangular(family[t])) {
        ++report.structure.failed;
        witness(report, "block A(" + std::to_string(t) + "," + std::to_string(i) + ") not upper triangular");
      }
      ++report.self_identity.checked;
      if (!(linalg::mat_mul(select, family[t]) == self_product(p, table, t, i))) {
        ++report.self_identity.failed;
        witness(report, "S A(" + std::to_string(t) + "," + std::to_string(i) + ") differs from its closed form");
      }
    }
    ++report.structure.checked;
    if (!power_law(family)) {
      ++report.structure.failed;
      witness(report, "diagonal power law fails for node " + std::to_string(i));
    }
    for (std::uint32_t j = 0; j < p.n; ++j) {
      if (j == i) continue;
      const Mat repair = c1::repair_matrix(p, i, j);
      std::vector<Mat> bs;
      for (std::uint32_t t = 0; t < p.r; ++t) {
        bs.push_back(c1::b_matrix(p, table, t, j, i));
        ++report.factorization.checked;
        if (!(linalg::mat_mul(select, code.block(t, j)) ==
              linalg::mat_mul(bs.back(), repair))) {
          ++report.factorization.failed;
          witness(report, "S A != B R at t=" + std::to_string(t) + ", j=" + std::to_string(j) +
                              ", i=" + std::to_string(i));
        }
        ++report.structure.checked;
        if (!upper_triangular(bs.back())) {
          ++report.structure.failed;
          witness(report, "B(" + std::to_string(t) + "," + std::to_string(j) + "," + std::to_string(i) +
                              ") not upper triangular");
        }
      }
      ++report.structure.checked;
      if (!power_law(bs)) {
        ++report.structure.failed;
        witness(report, "B diagonal power law fails for j=" + std::to_string(j) + ", i=" + std::to_string(i));
      }
    }
  }
}

void record_lambda_violations(PropertyReport& report, const c1::C1Code& code) {
  const auto violations = code.violations();
  report.lambda_violations += violations.size();
  for (const auto& v : violations) witness(report, v.describe());
}

}  // namespace

bool PropertyReport::ok() const {
  return lambda_violations == 0 && mds.failures.empty() && factorization.failed == 0 &&
         self_identity.failed == 0 && structure.failed == 0 && repairs.failed == 0;
}

std::string PropertyReport::summary() const {
  const std::size_t passed = mds.checked - mds.failures.size();
  std::string out = std::to_string(passed) + "/" + std::to_string(mds.checked) + " subsets";
  if (!mds.exhaustive) out += " (sampled of " + std::to_string(mds.total_subsets) + ")";
  out += ", " + std::to_string(repairs.passed()) + "/" + std::to_string(repairs.checked) + " repairs";
  if (repairs.checked < repair_total) out += " (sampled of " + std::to_string(repair_total) + ")";
  return out;
}

PropertyReport verify_c1(const c1::C1Code& code, const VerifyOptions& options) {
  PropertyReport report;
  const auto& p = code.params();
  record_lambda_violations(report, code);
  record_mds(report, code.parity_check(), options);
  check_c1_algebra(report, code);

  const auto word = random_codeword(code.parity_check(), options.seed);
  const auto cases = repair_cases(p.n, p.d, options.repair_cap, options.seed, report.repair_total);
  const std::size_t expected = static_cast<std::size_t>(p.d) * p.repair_rows();
  sweep(report, cases, options.threads,
        [&](const RepairCase& c) { return codec::c1_repair_plan(code, c.failed, c.helpers); }, word,
        expected);
  return report;
}

PropertyReport verify_shortened(const codec::ShortenedCode& code, const VerifyOptions& options) {
  PropertyReport report;
  record_lambda_violations(report, code.base());
  record_mds(report, code.parity_check(), options);
  check_c1_algebra(report, code.base());

  const auto word = random_codeword(code.parity_check(), options.seed);
  const auto cases = repair_cases(code.n(), code.d(), options.repair_cap, options.seed, report.repair_total);
  const std::size_t expected = code.d() * code.base().params().repair_rows();
  sweep(report, cases, options.threads,
        [&](const RepairCase& c) { return codec::shortened_repair_plan(code, c.failed, c.helpers); },
        word, expected);
  return report;
}

PropertyReport verify_c2(const c2::C2Code& code, const VerifyOptions& options) {
  PropertyReport report;
  const auto& p = code.params();
  const auto& bp = p.base;
  const auto& f = p.field();
  for (const auto& v : code.violations()) {
    ++report.lambda_violations;
    witness(report, v.describe());
  }
  record_mds(report, code.parity_check(), options);

  for (std::uint32_t i = 0; i < p.n; ++i) {
    const std::uint32_t ip = i % bp.n;
    const Mat select = c1::select_matrix(bp, ip);
    std::vector<Mat> family;
    for (std::uint32_t t = 0; t < p.r; ++t) {
      family.push_back(code.block(t, i));
      ++report.structure.checked;
      if (!upper_triangular(family.back())) {
        ++report.structure.failed;
        witness(report, "block A(" + std::to_string(t) + "," + std::to_string(i) + ") not upper triangular");
      }
      ++report.self_identity.checked;
      const Mat expected = linalg::scale(self_product(bp, code.base().lambdas(), t, ip), f.pow(p.xs[i], t));
      if (!(linalg::mat_mul(select, family.back()) == expected)) {
        ++report.self_identity.failed;
        witness(report, "S A(" + std::to_string(t) + "," + std::to_string(i) + ") differs from its closed form");
      }
    }
    ++report.structure.checked;
    if (!power_law(family)) {
      ++report.structure.failed;
      witness(report, "diagonal power law fails for node " + std::to_string(i));
    }
    for (std::uint32_t j = 0; j < p.n; ++j) {
      const std::uint32_t jp = j % bp.n;
      if (jp == ip) continue;
      const Mat repair = c1::repair_matrix(bp, ip, jp);
      for (std::uint32_t t = 0; t < p.r; ++t) {
        ++report.factorization.checked;
        const Mat b = linalg::scale(c1::b_matrix(bp, code.base().lambdas(), t, jp, ip), f.pow(p.xs[j], t));
        if (!(linalg::mat_mul(select, code.block(t, j)) == linalg::mat_mul(b, repair))) {
          ++report.factorization.failed;
          witness(report, "S A != x^t B R at t=" + std::to_string(t) + ", j=" + std::to_string(j) +
                              ", i=" + std::to_string(i));
        }
      }
    }
  }

  const auto word = random_codeword(code.parity_check(), options.seed);
  std::vector<RepairCase> cases;
  for (std::size_t i = 0; i < p.n; ++i) {
    RepairCase c{i, {}};
    for (std::size_t j = 0; j < p.n; ++j) {
      if (j != i) c.helpers.push_back(j);
    }
    cases.push_back(std::move(c));
  }
  report.repair_total = cases.size();
  sweep(report, cases, options.threads,
        [&](const RepairCase& c) { return c2::c2_repair_plan(code, c.failed); }, word,
        c2::c2_expected_bandwidth(p));
  return report;
}

}  // namespace msrc::verify
