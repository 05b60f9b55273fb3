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
#include "msrc/codec.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace msrc {

ParityCheckCode::ParityCheckCode(gf::Field field, std::size_t n, std::size_t k, std::size_t N,
                                 std::vector<linalg::Mat> blocks)
    : field_(std::move(field)), n_(n), k_(k), N_(N), blocks_(std::move(blocks)) {
  if (k == 0 || k >= n || blocks_.size() != (n - k) * n) {
    throw Error(ErrorCode::DimensionMismatch, "parity-check code needs r*n blocks and 0 < k < n");
  }
  for (const auto& b : blocks_) {
    if (b.rows() != N || b.cols() != N || !(b.field() == field_)) {
      throw Error(ErrorCode::DimensionMismatch, "parity-check blocks must be N x N");
    }
  }
}

linalg::Mat ParityCheckCode::columns(const std::vector<std::size_t>& nodes) const {
  std::vector<std::vector<linalg::Mat>> grid;
  grid.reserve(r());
  for (std::size_t t = 0; t < r(); ++t) {
    std::vector<linalg::Mat> row;
    row.reserve(nodes.size());
    for (auto i : nodes) row.push_back(block(t, i));
    grid.push_back(std::move(row));
  }
  return linalg::assemble_blocks(grid);
}

}  // namespace msrc

namespace msrc::codec {

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// -P^{-1} D for the target columns P and source columns D.
Mat solution_map(const ParityCheckCode& code, const std::vector<std::size_t>& sources,
                 const std::vector<std::size_t>& targets) {
  const Mat inv = linalg::inverse(code.columns(targets));
  const Mat prod = linalg::mat_mul(inv, code.columns(sources));
  return linalg::scale(prod, code.field().neg(code.field().one()));
}

void check_vec(const ParityCheckCode& code, const Vec& v) {
  if (v.size() != code.N() || !(v.field() == code.field())) {
    throw Error(ErrorCode::DimensionMismatch, "node vector must have length N over the code's field");
  }
}

std::vector<Element> flatten(const std::vector<Vec>& vs) {
  std::vector<Element> out;
  for (const auto& v : vs) out.insert(out.end(), v.elems().begin(), v.elems().end());
  return out;
}

}  // namespace

Encoder::Encoder(const ParityCheckCode& code) : generator_(code.field(), 0, 0) {
  try {
    generator_ = solution_map(code, range(0, code.k()), range(code.k(), code.n()));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    throw Error(ErrorCode::Internal, "parity columns are singular; the code is not MDS");
  }
}

void Encoder::apply(std::span<const Element> data, std::span<Element> parity) const {
  std::fill(parity.begin(), parity.end(), Element{});
  linalg::mat_vec_accumulate(generator_, data, parity);
}

Codeword encode(const ParityCheckCode& code, const std::vector<Vec>& data) {
  if (data.size() != code.k()) {
    throw Error(ErrorCode::DimensionMismatch, "encode needs exactly k data vectors");
  }
  for (const auto& v : data) check_vec(code, v);
  const Encoder enc(code);
  const auto flat = flatten(data);
  std::vector<Element> parity(code.r() * code.N());
  enc.apply(flat, parity);
  Codeword word{data};
  for (std::size_t j = 0; j < code.r(); ++j) {
    word.nodes.emplace_back(code.field(), std::vector<Element>(parity.begin() + j * code.N(),
                                                               parity.begin() + (j + 1) * code.N()));
  }
  return word;
}

Vec parity_residual(const ParityCheckCode& code, const Codeword& word) {
  if (word.nodes.size() != code.n()) {
    throw Error(ErrorCode::DimensionMismatch, "codeword must have n nodes");
  }
  for (const auto& v : word.nodes) check_vec(code, v);
  Vec out(code.field(), code.r() * code.N());
  for (std::size_t t = 0; t < code.r(); ++t) {
    auto dst = out.elems().subspan(t * code.N(), code.N());
    for (std::size_t i = 0; i < code.n(); ++i) {
      linalg::mat_vec_accumulate(code.block(t, i), word.nodes[i].elems(), dst);
    }
  }
  return out;
}

Reconstructor::Reconstructor(const ParityCheckCode& code, std::vector<std::size_t> available)
    : solution_(code.field(), 0, 0) {
  std::sort(available.begin(), available.end());
  available.erase(std::unique(available.begin(), available.end()), available.end());
  if (!available.empty() && available.back() >= code.n()) {
    throw Error(ErrorCode::OutOfRange, "available node index out of range");
  }
  if (available.size() < code.k()) {
    throw Error(ErrorCode::InsufficientNodes, "need at least k=" + std::to_string(code.k()) +
                                                  " nodes, got " +
                                                  std::to_string(available.size()));
  }
  sources_.assign(available.begin(), available.begin() + static_cast<std::ptrdiff_t>(code.k()));
  for (std::size_t i = 0; i < code.n(); ++i) {
    if (!std::binary_search(sources_.begin(), sources_.end(), i)) targets_.push_back(i);
  }
  solution_ = solution_map(code, sources_, targets_);
}

void Reconstructor::apply(std::span<const Element> sources, std::span<Element> targets) const {
  std::fill(targets.begin(), targets.end(), Element{});
  linalg::mat_vec_accumulate(solution_, sources, targets);
}

Codeword reconstruct(const ParityCheckCode& code, const std::map<std::size_t, Vec>& available) {
  std::vector<std::size_t> idx;
  for (const auto& [i, v] : available) {
    check_vec(code, v);
    idx.push_back(i);
  }
  const Reconstructor rec(code, idx);
  std::vector<Vec> src;
  for (auto i : rec.sources()) src.push_back(available.at(i));
  std::vector<Element> out(code.r() * code.N());
  rec.apply(flatten(src), out);

  Codeword word;
  word.nodes.assign(code.n(), Vec(code.field(), code.N()));
  for (auto i : rec.sources()) word.nodes[i] = available.at(i);
  for (std::size_t j = 0; j < rec.targets().size(); ++j) {
    const auto begin = out.begin() + static_cast<std::ptrdiff_t>(j * code.N());
    word.nodes[rec.targets()[j]] =
        Vec(code.field(), std::vector<Element>(begin, begin + static_cast<std::ptrdiff_t>(code.N())));
  }
  for (const auto& [i, v] : available) {
    if (!(word.nodes[i] == v)) {
      throw Error(ErrorCode::Inconsistent,
                  "node " + std::to_string(i) + " disagrees with the decoded codeword");
    }
  }
  return word;
}

RepairPlan::RepairPlan(RepairSetup setup)
    : setup_(std::move(setup)), solution_(setup_.failed_projection.at(0).field(), 0, 0) {
  const auto& field = solution_.field();
  const std::size_t groups = setup_.failed_projection.size();
  const std::size_t rows_per_group = setup_.failed_projection.front().rows();

  std::vector<bool> covered(setup_.N, false);
  std::size_t failed_unknowns = 0;
  for (const auto& part : setup_.parts) {
    for (auto c : part) {
      if (c >= setup_.N || covered[c]) {
        throw Error(ErrorCode::Internal, "repair parts must partition the node content");
      }
      covered[c] = true;
    }
    failed_unknowns += part.size();
  }
  if (failed_unknowns != setup_.N) {
    throw Error(ErrorCode::Internal, "repair parts must partition the node content");
  }

  std::size_t unknowns = failed_unknowns;
  for (const auto& b : setup_.bypass) unknowns += b.projection.rows();
  for (const auto& h : setup_.helpers) {
    total_download_ += h.download.rows();
    bandwidth_ += linalg::rank(h.download);
  }
  const std::size_t equations = groups * rows_per_group;
  if (equations != unknowns) {
    throw Error(ErrorCode::DimensionMismatch, "repair system is " + std::to_string(equations) +
                                                  " equations in " + std::to_string(unknowns) +
                                                  " unknowns");
  }

  // Columns: the failed node's parts, then each bypassed projection.
  Mat system(field, equations, unknowns);
  Mat rhs(field, equations, total_download_);
  for (std::size_t t = 0; t < groups; ++t) {
    const Mat& sa = setup_.failed_projection[t];
    const std::size_t row0 = t * rows_per_group;
    std::size_t col = 0;
    for (const auto& part : setup_.parts) {
      for (std::size_t b = 0; b < part.size(); ++b, ++col) {
        for (std::size_t a = 0; a < rows_per_group; ++a) system(row0 + a, col) = sa(a, part[b]);
      }
    }
    for (const auto& by : setup_.bypass) {
      const Mat& coef = by.coefficients.at(t);
      for (std::size_t b = 0; b < coef.cols(); ++b, ++col) {
        for (std::size_t a = 0; a < rows_per_group; ++a) system(row0 + a, col) = coef(a, b);
      }
    }
    std::size_t dcol = 0;
    for (const auto& h : setup_.helpers) {
      const Mat& coef = h.coefficients.at(t);
      for (std::size_t b = 0; b < coef.cols(); ++b, ++dcol) {
        for (std::size_t a = 0; a < rows_per_group; ++a) {
          rhs(row0 + a, dcol) = field.neg(coef(a, b));
        }
      }
    }
  }
  Mat inv(field, 0, 0);
  try {
    inv = linalg::inverse(system);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    throw Error(ErrorCode::Singular,
                "repair system for node " + std::to_string(setup_.failed) + " is singular");
  }
  solution_ = linalg::mat_mul(inv, rhs);
}

Vec RepairPlan::download(std::size_t helper_index, const Vec& node) const {
  return linalg::mat_vec(setup_.helpers.at(helper_index).download, node);
}

std::size_t RepairPlan::byproduct_size() const {
  std::size_t s = 0;
  for (const auto& b : setup_.bypass) s += b.projection.rows();
  return s;
}

void RepairPlan::recover(std::span<const Element> downloads, std::span<Element> node,
                         std::span<Element> byproducts) const {
  if (downloads.size() != total_download_ || node.size() != setup_.N) {
    throw Error(ErrorCode::DimensionMismatch, "download or output size does not match the plan");
  }
  std::vector<Element> x(solution_.rows());
  linalg::mat_vec_accumulate(solution_, downloads, x);
  std::size_t pos = 0;
  for (const auto& part : setup_.parts) {
    for (auto c : part) node[c] = x[pos++];
  }
  if (!byproducts.empty()) {
    if (byproducts.size() != byproduct_size()) {
      throw Error(ErrorCode::DimensionMismatch, "byproduct buffer has the wrong size");
    }
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(pos), x.end(), byproducts.begin());
  }
}

RepairReport RepairPlan::run(const Codeword& word, Rational optimal) const {
  const auto& field = solution_.field();
  std::vector<Element> downloads;
  std::map<std::size_t, std::size_t> counts;
  std::vector<std::size_t> helper_nodes;
  for (std::size_t h = 0; h < setup_.helpers.size(); ++h) {
    const auto& term = setup_.helpers[h];
    const Vec d = download(h, word.nodes.at(term.node));
    downloads.insert(downloads.end(), d.elems().begin(), d.elems().end());
    counts[term.node] = term.download.rows();
    helper_nodes.push_back(term.node);
  }
  Vec recovered(field, setup_.N);
  std::vector<Element> by(byproduct_size());
  recover(downloads, recovered.elems(), by);

  std::map<std::size_t, Vec> byproducts;
  std::size_t pos = 0;
  for (const auto& b : setup_.bypass) {
    const std::size_t len = b.projection.rows();
    byproducts.emplace(b.node, Vec(field, std::vector<Element>(by.begin() + static_cast<std::ptrdiff_t>(pos),
                                                               by.begin() + static_cast<std::ptrdiff_t>(pos + len))));
    pos += len;
  }
  return RepairReport{setup_.failed,          std::move(helper_nodes), std::move(recovered),
                      std::move(counts),      bandwidth_,              optimal,
                      std::move(byproducts)};
}

std::vector<std::size_t> check_helpers(std::size_t n, std::size_t failed,
                                       const std::vector<std::size_t>& helpers,
                                       std::size_t expected) {
  if (failed >= n) throw Error(ErrorCode::OutOfRange, "failed node index out of range");
  std::set<std::size_t> seen;
  for (auto h : helpers) {
    if (h >= n || h == failed || !seen.insert(h).second) {
      throw Error(ErrorCode::BadHelperSet,
                  "helper " + std::to_string(h) + " is out of range, repeated or the failed node");
    }
  }
  if (helpers.size() != expected) {
    throw Error(ErrorCode::BadHelperSet, "need exactly " + std::to_string(expected) +
                                             " helpers, got " + std::to_string(helpers.size()));
  }
  return {seen.begin(), seen.end()};
}

RepairSetup c1_repair_setup(const c1::C1Code& code, std::size_t failed,
                            const std::vector<std::size_t>& helpers) {
  const auto& p = code.params();
  const auto sorted = check_helpers(p.n, failed, helpers, p.d);
  const auto i = static_cast<std::uint32_t>(failed);
  const auto wary = p.wary();
  const Mat select = c1::select_matrix(p, i);

  RepairSetup setup;
  setup.failed = failed;
  setup.N = p.N;
  for (std::uint32_t u = 0; u < p.w; ++u) setup.parts.push_back(wary.v_row_map(i % p.m, u));
  for (std::uint32_t t = 0; t < p.r; ++t) {
    setup.failed_projection.push_back(linalg::mat_mul(select, code.block(t, i)));
  }
  auto b_blocks = [&](std::uint32_t j) {
    std::vector<Mat> out;
    for (std::uint32_t t = 0; t < p.r; ++t) out.push_back(c1::b_matrix(p, code.lambdas(), t, j, i));
    return out;
  };
  for (std::uint32_t j = 0; j < p.n; ++j) {
    if (j == i) continue;
    if (std::binary_search(sorted.begin(), sorted.end(), j)) {
      setup.helpers.push_back({j, c1::repair_matrix(p, i, j), b_blocks(j)});
    } else {
      setup.bypass.push_back({j, c1::repair_matrix(p, i, j), b_blocks(j)});
    }
  }
  return setup;
}

RepairPlan c1_repair_plan(const c1::C1Code& code, std::size_t failed,
                          const std::vector<std::size_t>& helpers) {
  return RepairPlan(c1_repair_setup(code, failed, helpers));
}

Rational c1_optimal_bandwidth(const c1::C1Params& params) {
  return Rational::of(static_cast<std::int64_t>(params.d) * static_cast<std::int64_t>(params.N),
                      params.d - params.k + 1);
}

RepairReport repair(const c1::C1Code& code, const Codeword& word, std::size_t failed,
                    const std::vector<std::size_t>& helpers) {
  if (word.nodes.size() != code.params().n) {
    throw Error(ErrorCode::DimensionMismatch, "codeword must have n nodes");
  }
  return c1_repair_plan(code, failed, helpers).run(word, c1_optimal_bandwidth(code.params()));
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t next = out * (n - k + i) / i;
    if (next < out) return static_cast<std::size_t>(-1);
    out = next;
  }
  return out;
}

}  // namespace

MdsReport verify_mds(const ParityCheckCode& code, const MdsOptions& options) {
  const std::size_t n = code.n(), r = code.r();
  MdsReport report;
  report.total_subsets = binomial(n, r);
  auto check = [&](const std::vector<std::size_t>& subset) {
    ++report.checked;
    if (!linalg::is_nonsingular(code.columns(subset))) report.failures.push_back(subset);
  };
  if (report.total_subsets <= options.exhaustive_cap) {
    std::vector<std::size_t> subset = range(0, r);
    while (true) {
      check(subset);
      std::size_t pos = r;
      while (pos > 0 && subset[pos - 1] == n - r + pos - 1) --pos;
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t j = pos; j < r; ++j) subset[j] = subset[j - 1] + 1;
    }
    return report;
  }
  report.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> all = range(0, n);
  for (std::size_t s = 0; s < options.exhaustive_cap; ++s) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> subset(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r));
    std::sort(subset.begin(), subset.end());
    check(subset);
  }
  return report;
}

namespace {

ParityCheckCode drop_first_column(const c1::C1Code& base) {
  const auto& pcm = base.parity_check();
  std::vector<Mat> blocks;
  for (std::size_t t = 0; t < pcm.r(); ++t) {
    for (std::size_t i = 1; i < pcm.n(); ++i) blocks.push_back(pcm.block(t, i));
  }
  return ParityCheckCode(pcm.field(), pcm.n() - 1, pcm.k() - 1, pcm.N(), std::move(blocks));
}

}  // namespace

namespace {

c1::C1Code&& shortenable(c1::C1Code&& base) {
  if (base.params().k < 2) {
    throw Error(ErrorCode::BadDegree, "shortening needs a base code with k >= 2");
  }
  return std::move(base);
}

}  // namespace

ShortenedCode::ShortenedCode(c1::C1Code base)
    : base_(shortenable(std::move(base))), pcm_(drop_first_column(base_)) {}

ShortenedCode shorten(c1::C1Code base) { return ShortenedCode(std::move(base)); }

Codeword unshorten(const ShortenedCode& code, const Codeword& word) {
  if (word.nodes.size() != code.n()) {
    throw Error(ErrorCode::DimensionMismatch, "codeword must have n nodes");
  }
  Codeword base{{Vec(code.parity_check().field(), code.N())}};
  base.nodes.insert(base.nodes.end(), word.nodes.begin(), word.nodes.end());
  return base;
}

RepairPlan shortened_repair_plan(const ShortenedCode& code, std::size_t failed,
                                 const std::vector<std::size_t>& helpers) {
  const auto sorted = check_helpers(code.n(), failed, helpers, code.d());
  std::vector<std::size_t> base_helpers{0};
  for (auto h : sorted) base_helpers.push_back(h + 1);
  RepairSetup setup = c1_repair_setup(code.base(), failed + 1, base_helpers);

  // The pinned node always holds zero, so its download is free and its term
  // contributes nothing to the right-hand side.
  std::erase_if(setup.helpers, [](const HelperTerm& h) { return h.node == 0; });
  setup.failed -= 1;
  for (auto& h : setup.helpers) h.node -= 1;
  for (auto& b : setup.bypass) b.node -= 1;
  return RepairPlan(std::move(setup));
}

Rational shortened_optimal_bandwidth(const ShortenedCode& code) {
  const auto& p = code.base().params();
  return Rational::of(static_cast<std::int64_t>(code.d()) * static_cast<std::int64_t>(p.N),
                      p.d - p.k + 1);
}

RepairReport repair(const ShortenedCode& code, const Codeword& word, std::size_t failed,
                    const std::vector<std::size_t>& helpers) {
  if (word.nodes.size() != code.n()) {
    throw Error(ErrorCode::DimensionMismatch, "codeword must have n nodes");
  }
  return shortened_repair_plan(code, failed, helpers).run(word, shortened_optimal_bandwidth(code));
}

}  // namespace msrc::codec
