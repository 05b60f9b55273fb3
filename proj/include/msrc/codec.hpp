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
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "msrc/construction_c1.hpp"
#include "msrc/linalg.hpp"
#include "msrc/parity_check.hpp"

namespace msrc::codec {

using gf::Element;
using linalg::Mat;
using linalg::Vec;

// Systematic encoding: nodes [0, k) hold data verbatim, [k, n) parity.
class Encoder {
 public:
  explicit Encoder(const ParityCheckCode& code);

  // data holds k node vectors back to back; parity receives r of them.
  void apply(std::span<const Element> data, std::span<Element> parity) const;

 private:
  Mat generator_;  // rN x kN
};

Codeword encode(const ParityCheckCode& code, const std::vector<Vec>& data);
// Stacked sum_i A_{t,i} f_i over t; zero iff the codeword is valid.
Vec parity_residual(const ParityCheckCode& code, const Codeword& word);

// Recovers every node from k of the available ones (the k lowest indices).
class Reconstructor {
 public:
  Reconstructor(const ParityCheckCode& code, std::vector<std::size_t> available);

  const std::vector<std::size_t>& sources() const { return sources_; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  // sources: k vectors in sources() order; targets: r vectors in targets() order.
  void apply(std::span<const Element> sources, std::span<Element> targets) const;

 private:
  std::vector<std::size_t> sources_;
  std::vector<std::size_t> targets_;
  Mat solution_;  // rN x kN
};

// Throws InsufficientNodes below k, Inconsistent when the surplus nodes
// disagree with the decoded codeword.
Codeword reconstruct(const ParityCheckCode& code, const std::map<std::size_t, Vec>& available);

struct RepairReport {
  std::size_t failed = 0;
  std::vector<std::size_t> helpers;
  Vec recovered;
  std::map<std::size_t, std::size_t> downloads;  // helper -> symbols
  std::size_t bandwidth = 0;
  Rational optimal;                             // cut-set bound dN/(d-k+1)
  std::map<std::size_t, Vec> byproducts;        // bypassed node l -> R_{i,l} f_l

  Rational ratio() const { return Rational::of(static_cast<std::int64_t>(bandwidth), 1) / optimal; }
};

// One contacted node: downloads `download * f_node`; for each parity group t,
// select_t * A_{t,node} = coefficients[t] * download.
struct HelperTerm {
  std::size_t node;
  Mat download;
  std::vector<Mat> coefficients;
};

// A surviving node that is not contacted; its projection is solved for.
struct BypassTerm {
  std::size_t node;
  Mat projection;
  std::vector<Mat> coefficients;
};

struct RepairSetup {
  std::size_t failed = 0;
  std::size_t N = 0;
  // Partition of [0, N): the failed node is recovered part by part.
  std::vector<std::vector<std::size_t>> parts;
  // select_t * A_{t,failed}, one per parity group.
  std::vector<Mat> failed_projection;
  std::vector<HelperTerm> helpers;
  std::vector<BypassTerm> bypass;
};

// Solves the projected parity-check system once and keeps the linear map
// from downloads to the failed node's content.
class RepairPlan {
 public:
  // Throws Singular if the projected system is not uniquely solvable.
  explicit RepairPlan(RepairSetup setup);

  std::size_t failed() const { return setup_.failed; }
  const std::vector<HelperTerm>& helpers() const { return setup_.helpers; }
  const std::vector<BypassTerm>& bypass() const { return setup_.bypass; }
  // Sum of ranks of the download matrices.
  std::size_t bandwidth() const { return bandwidth_; }
  std::size_t total_download() const { return total_download_; }

  Vec download(std::size_t helper_index, const Vec& node) const;
  // downloads: concatenated helper downloads in helpers() order.
  // byproducts, when non-empty, receives the bypass projections back to back.
  void recover(std::span<const Element> downloads, std::span<Element> node,
               std::span<Element> byproducts = {}) const;
  std::size_t byproduct_size() const;

  RepairReport run(const Codeword& word, Rational optimal) const;

 private:
  RepairSetup setup_;
  Mat solution_;  // unknowns x concatenated downloads
  std::size_t bandwidth_ = 0;
  std::size_t total_download_ = 0;
};

// Validates a helper list against the failed node: distinct, in range, not
// containing the failed node, and of the expected size.
std::vector<std::size_t> check_helpers(std::size_t n, std::size_t failed,
                                       const std::vector<std::size_t>& helpers,
                                       std::size_t expected);

RepairSetup c1_repair_setup(const c1::C1Code& code, std::size_t failed,
                            const std::vector<std::size_t>& helpers);
RepairPlan c1_repair_plan(const c1::C1Code& code, std::size_t failed,
                          const std::vector<std::size_t>& helpers);
Rational c1_optimal_bandwidth(const c1::C1Params& params);
RepairReport repair(const c1::C1Code& code, const Codeword& word, std::size_t failed,
                    const std::vector<std::size_t>& helpers);

struct MdsOptions {
  std::size_t exhaustive_cap = 100000;
  std::uint64_t seed = 0x5eed;
};

struct MdsReport {
  std::size_t total_subsets = 0;
  std::size_t checked = 0;
  bool exhaustive = true;
  std::vector<std::vector<std::size_t>> failures;
};

// Checks every r-subset of block columns for non-singularity (or a uniform
// sample of them when C(n, r) exceeds the cap).
MdsReport verify_mds(const ParityCheckCode& code, const MdsOptions& options = {});

// The (n, k) code with repair degree d obtained from an (n+1, k+1) code with
// degree d+1 by pinning base data node 0 to zero. View node v is base node v+1.
class ShortenedCode {
 public:
  explicit ShortenedCode(c1::C1Code base);

  const c1::C1Code& base() const { return base_; }
  const ParityCheckCode& parity_check() const { return pcm_; }
  std::size_t n() const { return pcm_.n(); }
  std::size_t k() const { return pcm_.k(); }
  std::size_t d() const { return base_.params().d - 1; }
  std::size_t N() const { return pcm_.N(); }

 private:
  c1::C1Code base_;
  ParityCheckCode pcm_;
};

ShortenedCode shorten(c1::C1Code base);
// Codeword of the base code with the pinned node restored.
Codeword unshorten(const ShortenedCode& code, const Codeword& word);
RepairPlan shortened_repair_plan(const ShortenedCode& code, std::size_t failed,
                                 const std::vector<std::size_t>& helpers);
Rational shortened_optimal_bandwidth(const ShortenedCode& code);
RepairReport repair(const ShortenedCode& code, const Codeword& word, std::size_t failed,
                    const std::vector<std::size_t>& helpers);

}  // namespace msrc::codec
