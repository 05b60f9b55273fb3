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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "container.hpp"
#include "example_fixtures.hpp"
#include "msrc/codec.hpp"
#include "msrc/construction_c2.hpp"
#include "msrc/verify.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

using msrc::Rational;
using msrc::c1::C1Code;
using msrc::c2::C2Code;
using msrc::linalg::Mat;
using msrc::testing::helper_sets;
using msrc::testing::subsets;

// Returns an empty string on success, otherwise the first failure.
using Check = std::function<std::string()>;

#define REQUIRE(cond, msg)                   \
  do {                                       \
    if (!(cond)) {                           \
      std::ostringstream os_;                \
      os_ << msg;                            \
      return os_.str();                      \
    }                                        \
  } while (0)

std::string example_vectors() {
  const C1Code code(msrc::c1::c1_params(6, 3, 4));
  const auto& p = code.params();
  REQUIRE(p.field.q() == 13, "q=" << p.field.q());
  REQUIRE(p.field.primitive().value == 2, "c=" << p.field.primitive().value);
  for (std::uint32_t i = 0; i < 6; ++i) {
    for (std::uint32_t u = 0; u < 2; ++u) {
      REQUIRE(code.lambdas().at(i, u) == p.field.primitive_pow(msrc::testing::kExampleExponents[i][u]),
              "lambda[" << i << "][" << u << "]");
    }
  }
  for (std::uint32_t i = 0; i < 6; ++i) {
    for (std::uint32_t t = 0; t < 3; ++t) {
      REQUIRE(code.block(t, i) == msrc::testing::materialize(p.field, msrc::testing::printed_example_blocks()[i], i, t),
              "block t=" << t << " i=" << i);
    }
  }
  return {};
}

std::string mds_exhaustive(std::string& detail) {
  std::vector<std::pair<std::string, msrc::ParityCheckCode>> codes;
  for (auto [n, k, d] : std::vector<std::tuple<int, int, int>>{{6, 3, 4}, {6, 3, 5}, {4, 2, 3}, {8, 4, 5}}) {
    C1Code code(msrc::c1::c1_params(n, k, d));
    codes.emplace_back("(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + ")",
                       code.parity_check());
  }
  codes.emplace_back("C2 (8,6,s=2)", C2Code(msrc::c2::c2_params(4, 2, 2)).parity_check());
  const std::vector<std::size_t> expected{20, 20, 6, 70, 28};
  for (std::size_t c = 0; c < codes.size(); ++c) {
    const auto& pcm = codes[c].second;
    std::size_t passing = 0;
    const auto all = subsets(pcm.n(), pcm.r());
    for (const auto& s : all) passing += msrc::linalg::is_nonsingular(pcm.columns(s)) ? 1 : 0;
    const auto report = msrc::codec::verify_mds(pcm);
    REQUIRE(all.size() == expected[c], codes[c].first << ": " << all.size() << " subsets");
    REQUIRE(passing == all.size(), codes[c].first << ": " << passing << "/" << all.size());
    REQUIRE(report.exhaustive && report.checked == expected[c] && report.failures.empty(),
            codes[c].first << ": verify_mds disagrees");
    detail += (c ? ", " : "") + std::to_string(passing) + "/" + std::to_string(all.size());
  }
  return {};
}

std::string repair_sweep(const C1Code& code, std::size_t expected, std::uint64_t seed, std::size_t& pairs) {
  const auto& p = code.params();
  const auto word = msrc::testing::random_codeword(code.parity_check(), seed);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    for (const auto& hs : helper_sets(p.n, i, p.d)) {
      const auto report = msrc::codec::repair(code, word, i, hs);
      std::size_t downloaded = 0;
      for (const auto& [j, symbols] : report.downloads) downloaded += symbols;
      REQUIRE(report.recovered == word.nodes[i], "node " << i << " not recovered");
      REQUIRE(downloaded == expected && report.bandwidth == expected,
              "node " << i << ": bandwidth " << report.bandwidth << " != " << expected);
      ++pairs;
    }
  }
  return {};
}

std::string repair_optimality(std::string& detail) {
  const C1Code a(msrc::c1::c1_params(6, 3, 4));
  const C1Code b(msrc::c1::c1_params(6, 3, 5));
  // dN/(d-k+1): 4*8/2 and 5*27/3.
  REQUIRE(msrc::codec::c1_optimal_bandwidth(a.params()) == Rational::of(16, 1), "gamma_opt (6,3,4)");
  REQUIRE(msrc::codec::c1_optimal_bandwidth(b.params()) == Rational::of(45, 1), "gamma_opt (6,3,5)");
  std::size_t pa = 0, pb = 0;
  if (auto e = repair_sweep(a, 16, 1, pa); !e.empty()) return "(6,3,4) " + e;
  if (auto e = repair_sweep(b, 45, 2, pb); !e.empty()) return "(6,3,5) " + e;
  REQUIRE(pa == 30 && pb == 6, "pair counts " << pa << ", " << pb);
  detail = std::to_string(pa) + " pairs at 16, " + std::to_string(pb) + " at 45";
  return {};
}

std::string factorization(std::string& detail) {
  std::size_t checks = 0;
  for (auto [n, k, d] : std::vector<std::tuple<int, int, int>>{{6, 3, 4}, {6, 3, 5}}) {
    const C1Code code(msrc::c1::c1_params(n, k, d));
    const auto& p = code.params();
    for (std::uint32_t i = 0; i < p.n; ++i) {
      const Mat s = msrc::c1::select_matrix(p, i);
      for (std::uint32_t t = 0; t < p.r; ++t) {
        REQUIRE(msrc::linalg::mat_mul(s, code.block(t, i)) == msrc::testing::self_reference(code, t, i),
                "self identity i=" << i << " t=" << t);
        ++checks;
        for (std::uint32_t j = 0; j < p.n; ++j) {
          if (j == i) continue;
          const Mat lhs = msrc::linalg::mat_mul(s, code.block(t, j));
          const Mat rhs = msrc::linalg::mat_mul(msrc::c1::b_matrix(p, code.lambdas(), t, j, i),
                                                msrc::c1::repair_matrix(p, i, j));
          REQUIRE(lhs == rhs, "(" << n << "," << k << "," << d << ") i=" << i << " j=" << j << " t=" << t);
          ++checks;
        }
      }
    }
  }
  detail = std::to_string(checks) + " matrix equalities";
  return {};
}

bool upper_triangular(const Mat& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < r && c < a.cols(); ++c) {
      if (a(r, c).value != 0) return false;
    }
  }
  return true;
}

std::string structure(std::string& detail) {
  std::size_t blocks = 0;
  auto check_blocks = [&](const msrc::ParityCheckCode& pcm, const std::string& name) -> std::string {
    const auto& f = pcm.field();
    for (std::size_t i = 0; i < pcm.n(); ++i) {
      for (std::size_t t = 0; t < pcm.r(); ++t) {
        const Mat& a = pcm.block(t, i);
        REQUIRE(upper_triangular(a), name << " A t=" << t << " i=" << i);
        for (std::size_t x = 0; x < pcm.N(); ++x) {
          REQUIRE(a(x, x) == f.pow(pcm.block(1, i)(x, x), static_cast<std::int64_t>(t)),
                  name << " power law t=" << t << " i=" << i << " a=" << x);
        }
        ++blocks;
      }
    }
    return {};
  };
  for (auto [n, k, d] : std::vector<std::tuple<int, int, int>>{{6, 3, 4}, {6, 3, 5}, {4, 2, 3}, {8, 4, 5}}) {
    const C1Code code(msrc::c1::c1_params(n, k, d));
    const auto& p = code.params();
    const std::string name = "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + ")";
    if (auto e = check_blocks(code.parity_check(), name); !e.empty()) return e;
    for (std::uint32_t i = 0; i < p.n; ++i) {
      for (std::uint32_t j = 0; j < p.n; ++j) {
        if (j == i) continue;
        for (std::uint32_t t = 0; t < p.r; ++t) {
          REQUIRE(upper_triangular(msrc::c1::b_matrix(p, code.lambdas(), t, j, i)),
                  name << " B t=" << t << " j=" << j << " i=" << i);
          ++blocks;
        }
      }
    }
  }
  if (auto e = check_blocks(C2Code(msrc::c2::c2_params(4, 2, 2)).parity_check(), "C2"); !e.empty()) return e;
  detail = std::to_string(blocks) + " blocks";
  return {};
}

std::string c2_bandwidth(std::string& detail) {
  const C2Code code(msrc::c2::c2_params(4, 2, 2));
  const auto& p = code.params();
  REQUIRE(p.n == 8 && p.k == 6 && p.N == 4, "shape");
  const std::int64_t s = 2, r = 2, n = 8;
  const Rational eps = Rational::of((s - 1) * (r - 1), n - 1);
  REQUIRE(msrc::c2::c2_optimal_bandwidth(p) == Rational::of(14, 1), "gamma_opt");
  const auto word = msrc::testing::random_codeword(code.parity_check(), 3);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto report = msrc::c2::c2_repair(code, word, i);
    std::size_t downloaded = 0;
    for (const auto& [j, symbols] : report.downloads) downloaded += symbols;
    REQUIRE(report.recovered == word.nodes[i], "node " << i << " not recovered");
    REQUIRE(downloaded == 16 && report.bandwidth == 16, "node " << i << ": " << downloaded);
    REQUIRE(report.ratio() == Rational::of(8, 7) && report.ratio() == Rational::of(1, 1) + eps,
            "node " << i << " ratio");
  }
  detail = "8 nodes at 16, ratio 8/7";
  return {};
}

std::string thresholds() {
  using msrc::gf::Construction;
  using msrc::gf::SymbolMode;
  REQUIRE(msrc::gf::c1_threshold(3, 2, 3) == 12, "threshold (6,3,4)");
  REQUIRE(msrc::gf::smallest_valid_q(Construction::C1, 6, 3, 4, 1, SymbolMode::Symbol) == 13, "q (6,3,4)");
  REQUIRE(msrc::gf::c2_threshold(2, 2, 2) == 8, "threshold C2");
  REQUIRE(msrc::gf::smallest_valid_q(Construction::C2, 4, 2, 3, 2, SymbolMode::Symbol) == 9, "q C2");
  // (10,7,8): w=2<r=3, q>4m=20. (10,5,8): w=4<r=5, q>m(w+1)=25. (10,7,9): w=r=3, q>mw=15.
  REQUIRE(msrc::gf::smallest_valid_q(Construction::C1, 10, 7, 8, 1, SymbolMode::Symbol) == 23, "q (10,7,8)");
  REQUIRE(msrc::gf::smallest_valid_q(Construction::C1, 10, 5, 8, 1, SymbolMode::Symbol) == 27, "q (10,5,8)");
  REQUIRE(msrc::gf::smallest_valid_q(Construction::C1, 10, 7, 9, 1, SymbolMode::Symbol) == 16, "q (10,7,9)");
  return {};
}

std::string shortening(std::string& detail) {
  const auto code = msrc::codec::shorten(C1Code(msrc::c1::c1_params(6, 4, 5)));
  REQUIRE(code.n() == 5 && code.k() == 3 && code.d() == 4, "shape");
  const auto& pcm = code.parity_check();
  std::size_t passing = 0;
  for (const auto& s : subsets(5, 2)) passing += msrc::linalg::is_nonsingular(pcm.columns(s)) ? 1 : 0;
  REQUIRE(passing == 10, passing << "/10 subsets");
  const auto word = msrc::testing::random_codeword(pcm, 4);
  for (const auto& erased : subsets(5, 2)) {
    std::map<std::size_t, msrc::linalg::Vec> avail;
    for (std::size_t i = 0; i < 5; ++i) {
      if (i != erased[0] && i != erased[1]) avail.emplace(i, word.nodes[i]);
    }
    REQUIRE(msrc::codec::reconstruct(pcm, avail).nodes == word.nodes, "decode without " << erased[0] << "," << erased[1]);
  }
  // dN/(d-k+1) = 4*8/2.
  std::size_t repairs = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (const auto& hs : helper_sets(5, i, 4)) {
      const auto report = msrc::codec::repair(code, word, i, hs);
      REQUIRE(report.recovered == word.nodes[i], "node " << i);
      REQUIRE(report.bandwidth == 16, "node " << i << " bandwidth " << report.bandwidth);
      ++repairs;
    }
  }
  detail = std::to_string(passing) + "/10 subsets, " + std::to_string(repairs) + "/5 repairs at 16";
  return {};
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return msrc::cli::run(args, out, err);
}

std::string end_to_end(std::string& detail) {
  const fs::path dir = fs::temp_directory_path() / ("msrc_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove_all(p); }
  } cleanup{dir};
  const std::string in = (dir / "in.bin").string(), container = (dir / "c.msrc").string();
  std::mt19937_64 rng(9);
  std::vector<std::uint8_t> data(64 * 1024);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  msrc::cli::write_file(in, data);
  REQUIRE(cli({"encode", in, container, "6", "3", "4"}) == 0, "encode failed");
  const auto original = msrc::cli::read_file(container);
  const auto header = msrc::cli::parse_header(original);
  REQUIRE(header.q() == 257, "q=" << header.q());

  std::size_t decodes = 0;
  for (const auto& erased : subsets(6, 3)) {
    auto c = msrc::cli::parse(original, 8);
    std::vector<std::string> args{"decode", (dir / "damaged.msrc").string(), (dir / "out.bin").string(), "--available"};
    for (std::size_t i = 0; i < 6; ++i) {
      if (std::find(erased.begin(), erased.end(), i) != erased.end()) {
        for (auto& x : c.nodes[i]) x = static_cast<std::uint16_t>(rng() % 257);
      } else {
        args.push_back(std::to_string(i));
      }
    }
    msrc::cli::write_file(args[1], msrc::cli::serialize(c));
    REQUIRE(cli(args) == 0, "decode failed without " << erased[0] << erased[1] << erased[2]);
    REQUIRE(msrc::cli::read_file(args[2]) == data, "decode mismatch without " << erased[0] << erased[1] << erased[2]);
    ++decodes;
  }

  std::size_t repairs = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (const auto& hs : helper_sets(6, i, 4)) {
      auto c = msrc::cli::parse(original, 8);
      for (auto& x : c.nodes[i]) x = 0;
      msrc::cli::write_file(container, msrc::cli::serialize(c));
      std::vector<std::string> args{"repair", container, "--fail", std::to_string(i), "--helpers"};
      for (auto j : hs) args.push_back(std::to_string(j));
      REQUIRE(cli(args) == 0, "repair of node " << i << " failed");
      REQUIRE(msrc::cli::read_file(container) == original, "container differs after repairing " << i);
      ++repairs;
    }
  }
  detail = std::to_string(decodes) + " decodes, " + std::to_string(repairs) + " repairs";
  return {};
}

std::string negative_controls(std::string& detail) {
  const auto p = msrc::c1::c1_params(6, 3, 4);
  msrc::verify::VerifyOptions options;
  options.seed = 10;

  auto paired = msrc::c1::assign_lambdas(p);
  paired.set(p.m, 0, paired.at(0, 0));
  const auto t1 = msrc::verify::verify_c1(C1Code(p, paired), options);
  REQUIRE(t1.lambda_violations > 0, "paired collision not flagged");
  REQUIRE(!t1.mds.failures.empty(), "paired collision: no singular subset");
  // Independent witness check.
  for (const auto& s : t1.mds.failures) {
    REQUIRE(!msrc::linalg::is_nonsingular(C1Code(p, paired).parity_check().columns(s)), "bogus witness");
  }

  auto within = msrc::c1::assign_lambdas(p);
  within.set(0, 1, within.at(0, 0));
  const auto t2 = msrc::verify::verify_c1(C1Code(p, within), options);
  REQUIRE(t2.lambda_violations > 0, "within-node collision not flagged");
  REQUIRE(t2.repairs.failed > 0, "within-node collision: repair sweep clean");
  REQUIRE(!t2.witnesses.empty() && !t2.ok(), "no witness");

  const auto clean = msrc::verify::verify_c1(C1Code(p), options);
  REQUIRE(clean.ok() && clean.witnesses.empty(), "clean code reports failures");
  detail = "T1: " + t1.summary() + "; T2: " + t2.summary();
  return {};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string(std::string&)> run;
  };
  auto plain = [](std::string (*fn)()) { return [fn](std::string&) { return fn(); }; };
  const std::vector<Criterion> criteria = {
      {"example golden vectors", plain(example_vectors)},
      {"MDS exhaustive", mds_exhaustive},
      {"repair optimality", repair_optimality},
      {"select/repair factorization", factorization},
      {"structural invariants", structure},
      {"replicated code bandwidth", c2_bandwidth},
      {"field thresholds", plain(thresholds)},
      {"shortening", shortening},
      {"end-to-end file round trip", end_to_end},
      {"negative controls", negative_controls},
  };
  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail, error;
    try {
      error = criteria[c].run(detail);
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty();
    failures += ok ? 0 : 1;
    std::printf("%s %2zu %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c + 1, criteria[c].name, secs,
                ok ? (detail.empty() ? "" : ": ") : ": ", ok ? detail.c_str() : error.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
