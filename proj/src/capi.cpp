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
#include "msrc/msrc.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "msrc/codec.hpp"
#include "msrc/construction_c1.hpp"
#include "msrc/construction_c2.hpp"
#include "msrc/verify.hpp"
#include "parallel.hpp"

using msrc::Error;
using msrc::ErrorCode;
using msrc::Rational;
using msrc::gf::Element;
using msrc::linalg::Vec;

struct msrc_code {
  std::variant<msrc::c1::C1Code, msrc::codec::ShortenedCode, msrc::c2::C2Code> impl;

  const msrc::ParityCheckCode& pcm() const {
    return std::visit([](const auto& c) -> const msrc::ParityCheckCode& { return c.parity_check(); },
                      impl);
  }
};

namespace {

thread_local std::string last_error;

struct BadSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

msrc_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return MSRC_E_INVALID_ARGUMENT;
    case ErrorCode::NotPrimePower: return MSRC_E_NOT_PRIME_POWER;
    case ErrorCode::TooLarge: return MSRC_E_TOO_LARGE;
    case ErrorCode::DivisionByZero: return MSRC_E_DIVISION_BY_ZERO;
    case ErrorCode::DimensionMismatch: return MSRC_E_DIMENSION_MISMATCH;
    case ErrorCode::Singular: return MSRC_E_SINGULAR;
    case ErrorCode::OutOfRange: return MSRC_E_OUT_OF_RANGE;
    case ErrorCode::OddLength: return MSRC_E_ODD_LENGTH;
    case ErrorCode::BadDegree: return MSRC_E_BAD_DEGREE;
    case ErrorCode::FieldTooSmall: return MSRC_E_FIELD_TOO_SMALL;
    case ErrorCode::InsufficientNodes: return MSRC_E_INSUFFICIENT_NODES;
    case ErrorCode::BadHelperSet: return MSRC_E_BAD_HELPER_SET;
    case ErrorCode::Inconsistent: return MSRC_E_INCONSISTENT;
    case ErrorCode::Internal: return MSRC_E_INTERNAL;
  }
  return MSRC_E_INTERNAL;
}

msrc_status fail(msrc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body and maps exceptions onto status codes.
template <class Body>
msrc_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const BadSymbol& e) {
    return fail(MSRC_E_BAD_SYMBOL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MSRC_E_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return fail(MSRC_E_INTERNAL, e.what());
  }
}

msrc::c1::LambdaTable corrupt(const msrc::c1::C1Params& params, int corruption) {
  auto table = msrc::c1::assign_lambdas(params);
  switch (corruption) {
    case MSRC_CORRUPT_NONE: break;
    case MSRC_CORRUPT_PAIRED: table.set(params.m, 0, table.at(0, 0)); break;
    case MSRC_CORRUPT_WITHIN_NODE: table.set(0, 1, table.at(0, 0)); break;
    default: throw Error(ErrorCode::InvalidArgument, "unknown corruption mode");
  }
  return table;
}

void check_symbols(const msrc_code& code, const uint16_t* payload, size_t count, size_t node) {
  const uint32_t q = code.pcm().field().q();
  for (size_t a = 0; a < count; ++a) {
    if (payload[a] >= q) {
      throw BadSymbol("node " + std::to_string(node) + " symbol " +
                                             std::to_string(a) + " is " + std::to_string(payload[a]) +
                                             ", not below q=" + std::to_string(q));
    }
  }
}

void gather(const uint16_t* src, Element* dst, size_t count) {
  for (size_t a = 0; a < count; ++a) dst[a] = Element{src[a]};
}

void scatter(const Element* src, uint16_t* dst, size_t count) {
  for (size_t a = 0; a < count; ++a) dst[a] = static_cast<uint16_t>(src[a].value);
}

// Stripes are processed in contiguous chunks, one per worker.
template <class Fn>
void for_stripes(size_t stripes, Fn&& fn) {
  const unsigned workers = msrc::detail::worker_count(0, stripes);
  const size_t chunk = (stripes + workers - 1) / std::max<size_t>(1, workers);
  msrc::detail::parallel_for(workers, workers, [&](size_t w) {
    const size_t begin = w * chunk;
    const size_t end = std::min(stripes, begin + chunk);
    for (size_t s = begin; s < end; ++s) fn(s);
  });
}

msrc::codec::RepairPlan make_plan(const msrc_code& code, size_t failed,
                                  const std::vector<size_t>& helpers) {
  struct Visitor {
    size_t failed;
    const std::vector<size_t>& helpers;
    msrc::codec::RepairPlan operator()(const msrc::c1::C1Code& c) const {
      return msrc::codec::c1_repair_plan(c, failed, helpers);
    }
    msrc::codec::RepairPlan operator()(const msrc::codec::ShortenedCode& c) const {
      return msrc::codec::shortened_repair_plan(c, failed, helpers);
    }
    msrc::codec::RepairPlan operator()(const msrc::c2::C2Code& c) const {
      msrc::codec::check_helpers(c.params().n, failed, helpers, c.params().n - 1);
      return msrc::c2::c2_repair_plan(c, failed);
    }
  };
  return std::visit(Visitor{failed, helpers}, code.impl);
}

Rational optimal_bandwidth(const msrc_code& code) {
  struct Visitor {
    Rational operator()(const msrc::c1::C1Code& c) const {
      return msrc::codec::c1_optimal_bandwidth(c.params());
    }
    Rational operator()(const msrc::codec::ShortenedCode& c) const {
      return msrc::codec::shortened_optimal_bandwidth(c);
    }
    Rational operator()(const msrc::c2::C2Code& c) const {
      return msrc::c2::c2_optimal_bandwidth(c.params());
    }
  };
  return std::visit(Visitor{}, code.impl);
}

}  // namespace

extern "C" {

const char* msrc_status_string(msrc_status status) {
  switch (status) {
    case MSRC_OK: return "ok";
    case MSRC_E_INVALID_ARGUMENT: return "invalid argument";
    case MSRC_E_NOT_PRIME_POWER: return "field order is not a prime power";
    case MSRC_E_TOO_LARGE: return "too large";
    case MSRC_E_DIVISION_BY_ZERO: return "division by zero";
    case MSRC_E_DIMENSION_MISMATCH: return "dimension mismatch";
    case MSRC_E_SINGULAR: return "singular system";
    case MSRC_E_OUT_OF_RANGE: return "out of range";
    case MSRC_E_ODD_LENGTH: return "odd code length";
    case MSRC_E_BAD_DEGREE: return "bad repair degree";
    case MSRC_E_FIELD_TOO_SMALL: return "field too small";
    case MSRC_E_INSUFFICIENT_NODES: return "insufficient nodes";
    case MSRC_E_BAD_HELPER_SET: return "bad helper set";
    case MSRC_E_INCONSISTENT: return "inconsistent nodes";
    case MSRC_E_INTERNAL: return "internal error";
    case MSRC_E_BAD_SYMBOL: return "symbol out of field range";
  }
  return "unknown status";
}

const char* msrc_last_error(void) { return last_error.c_str(); }

msrc_status msrc_code_create(msrc_construction construction, uint32_t n, uint32_t k, uint32_t d,
                             uint32_t s, const msrc_options* options, msrc_code** out) {
  if (!out) return fail(MSRC_E_INVALID_ARGUMENT, "out must not be NULL");
  *out = nullptr;
  const msrc_options defaults{};
  const msrc_options& opts = options ? *options : defaults;
  return guarded([&] {
    const auto mode = opts.byte_mode ? msrc::gf::SymbolMode::Byte : msrc::gf::SymbolMode::Symbol;
    const std::optional<uint32_t> q = opts.q ? std::optional<uint32_t>(opts.q) : std::nullopt;
    std::unique_ptr<msrc_code> code;
    if (construction == MSRC_C1) {
      msrc::c1::ParamsOptions po;
      po.q = q;
      po.mode = mode;
      if (opts.shorten) {
        if (n == 0xffffffffu || k == 0xffffffffu || d == 0xffffffffu) {
          throw Error(ErrorCode::OutOfRange, "parameters too large to shorten");
        }
        auto params = msrc::c1::c1_params(n + 1, k + 1, d + 1, po);
        auto table = corrupt(params, opts.corruption);
        code.reset(new msrc_code{msrc::codec::shorten(msrc::c1::C1Code(std::move(params), std::move(table)))});
      } else {
        auto params = msrc::c1::c1_params(n, k, d, po);
        auto table = corrupt(params, opts.corruption);
        code.reset(new msrc_code{msrc::c1::C1Code(std::move(params), std::move(table))});
      }
    } else if (construction == MSRC_C2) {
      if (opts.shorten) throw Error(ErrorCode::InvalidArgument, "shortening applies to C1 only");
      if (d + 1 != n) throw Error(ErrorCode::BadDegree, "C2 base code needs d = n-1");
      msrc::c2::ParamsOptions po;
      po.q = q;
      po.mode = mode;
      auto params = msrc::c2::c2_params(n, k, s, po);
      auto table = corrupt(params.base, opts.corruption);
      code.reset(new msrc_code{msrc::c2::C2Code(std::move(params), std::move(table))});
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown construction");
    }
    if (code->pcm().n() > MSRC_MAX_NODES) throw Error(ErrorCode::TooLarge, "too many nodes");
    *out = code.release();
    return MSRC_OK;
  });
}

void msrc_code_destroy(msrc_code* code) { delete code; }

msrc_status msrc_code_get_info(const msrc_code* code, msrc_info* info) {
  if (!code || !info) return fail(MSRC_E_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    msrc_info out{};
    const auto& pcm = code->pcm();
    const auto& f = pcm.field();
    out.n = static_cast<uint32_t>(pcm.n());
    out.k = static_cast<uint32_t>(pcm.k());
    out.r = static_cast<uint32_t>(pcm.r());
    out.N = static_cast<uint32_t>(pcm.N());
    out.p = f.p();
    out.e = f.e();
    out.q = f.q();
    out.primitive = f.primitive().value;
    out.s = 1;
    out.epsilon_num = 0;
    out.epsilon_den = 1;
    if (const auto* c = std::get_if<msrc::c1::C1Code>(&code->impl)) {
      const auto& p = c->params();
      out.construction = MSRC_C1;
      out.d = p.d;
      out.w = p.w;
      out.m = p.m;
      out.repair_bandwidth = static_cast<uint64_t>(p.d) * p.repair_rows();
    } else if (const auto* sc = std::get_if<msrc::codec::ShortenedCode>(&code->impl)) {
      const auto& p = sc->base().params();
      out.construction = MSRC_C1;
      out.shortened = 1;
      out.d = static_cast<uint32_t>(sc->d());
      out.w = p.w;
      out.m = p.m;
      out.repair_bandwidth = static_cast<uint64_t>(sc->d()) * p.repair_rows();
    } else {
      const auto& c2 = std::get<msrc::c2::C2Code>(code->impl);
      const auto& p = c2.params();
      out.construction = MSRC_C2;
      out.d = p.d();
      out.s = p.s;
      out.w = p.base.w;
      out.m = p.base.m;
      out.repair_bandwidth = msrc::c2::c2_expected_bandwidth(p);
      const auto eps = msrc::c2::c2_epsilon(p);
      out.epsilon_num = eps.num;
      out.epsilon_den = eps.den;
    }
    const auto opt = optimal_bandwidth(*code);
    out.optimal_num = opt.num;
    out.optimal_den = opt.den;
    *info = out;
    return MSRC_OK;
  });
}

msrc_status msrc_smallest_valid_q(msrc_construction construction, uint32_t n, uint32_t k, uint32_t d,
                                  uint32_t s, int byte_mode, uint32_t* q) {
  if (!q) return fail(MSRC_E_INVALID_ARGUMENT, "q must not be NULL");
  return guarded([&] {
    if (construction != MSRC_C1 && construction != MSRC_C2) {
      throw Error(ErrorCode::InvalidArgument, "unknown construction");
    }
    *q = msrc::gf::smallest_valid_q(
        construction == MSRC_C1 ? msrc::gf::Construction::C1 : msrc::gf::Construction::C2, n, k, d,
        construction == MSRC_C1 ? 1 : s,
        byte_mode ? msrc::gf::SymbolMode::Byte : msrc::gf::SymbolMode::Symbol);
    return MSRC_OK;
  });
}

msrc_status msrc_encode(const msrc_code* code, size_t stripes, uint16_t* const* nodes) {
  if (!code || (!nodes && stripes)) return fail(MSRC_E_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const auto& pcm = code->pcm();
    const size_t N = pcm.N(), k = pcm.k(), n = pcm.n();
    for (size_t i = 0; i < k && stripes; ++i) check_symbols(*code, nodes[i], stripes * N, i);
    const msrc::codec::Encoder encoder(pcm);
    for_stripes(stripes, [&](size_t s) {
      std::vector<Element> data(k * N), parity((n - k) * N);
      for (size_t i = 0; i < k; ++i) gather(nodes[i] + s * N, data.data() + i * N, N);
      encoder.apply(data, parity);
      for (size_t i = k; i < n; ++i) scatter(parity.data() + (i - k) * N, nodes[i] + s * N, N);
    });
    return MSRC_OK;
  });
}

msrc_status msrc_reconstruct(const msrc_code* code, size_t stripes, const uint32_t* available,
                             size_t count, uint16_t* const* nodes) {
  if (!code || (!available && count) || (!nodes && stripes)) {
    return fail(MSRC_E_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const auto& pcm = code->pcm();
    const size_t N = pcm.N(), k = pcm.k(), r = pcm.r();
    std::vector<size_t> avail(available, available + count);
    const msrc::codec::Reconstructor rec(pcm, avail);
    std::sort(avail.begin(), avail.end());
    avail.erase(std::unique(avail.begin(), avail.end()), avail.end());
    for (auto i : avail) {
      if (stripes) check_symbols(*code, nodes[i], stripes * N, i);
    }
    const auto& sources = rec.sources();
    const auto& targets = rec.targets();
    std::vector<bool> is_available(pcm.n(), false);
    for (auto i : avail) is_available[i] = true;

    // Decode into scratch first so nothing is written if a check fails.
    std::vector<std::vector<uint16_t>> decoded(r);
    for (auto& d : decoded) d.resize(stripes * N);
    std::vector<char> mismatch(stripes, 0);
    for_stripes(stripes, [&](size_t s) {
      std::vector<Element> src(k * N), dst(r * N);
      for (size_t j = 0; j < k; ++j) gather(nodes[sources[j]] + s * N, src.data() + j * N, N);
      rec.apply(src, dst);
      for (size_t j = 0; j < r; ++j) {
        scatter(dst.data() + j * N, decoded[j].data() + s * N, N);
        if (is_available[targets[j]] &&
            !std::equal(decoded[j].begin() + static_cast<std::ptrdiff_t>(s * N),
                        decoded[j].begin() + static_cast<std::ptrdiff_t>((s + 1) * N),
                        nodes[targets[j]] + s * N)) {
          mismatch[s] = 1;
        }
      }
    });
    for (size_t s = 0; s < stripes; ++s) {
      if (mismatch[s]) {
        throw Error(ErrorCode::Inconsistent,
                    "available nodes disagree with the decoded stripe " + std::to_string(s));
      }
    }
    for (size_t j = 0; j < r; ++j) {
      if (!is_available[targets[j]] && stripes) {
        std::copy(decoded[j].begin(), decoded[j].end(), nodes[targets[j]]);
      }
    }
    return MSRC_OK;
  });
}

msrc_status msrc_repair(const msrc_code* code, size_t stripes, uint32_t failed,
                        const uint32_t* helpers, size_t helper_count, uint16_t* const* nodes,
                        msrc_repair_report* report) {
  if (!code || (!helpers && helper_count) || (!nodes && stripes)) {
    return fail(MSRC_E_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const auto& pcm = code->pcm();
    const size_t N = pcm.N(), n = pcm.n();
    if (failed >= n) throw Error(ErrorCode::OutOfRange, "failed node out of range");
    std::vector<size_t> hs;
    if (helper_count == 0) {
      for (size_t j = 0; j < n; ++j) {
        if (j != failed) hs.push_back(j);
      }
    } else {
      hs.assign(helpers, helpers + helper_count);
    }
    const auto plan = make_plan(*code, failed, hs);
    for (const auto& h : plan.helpers()) {
      if (stripes) check_symbols(*code, nodes[h.node], stripes * N, h.node);
    }
    std::vector<size_t> offsets;
    size_t total = 0;
    for (const auto& h : plan.helpers()) {
      offsets.push_back(total);
      total += h.download.rows();
    }
    for_stripes(stripes, [&](size_t s) {
      std::vector<Element> downloads(total), node(N);
      for (size_t h = 0; h < plan.helpers().size(); ++h) {
        const auto& term = plan.helpers()[h];
        Vec content(pcm.field(), N);
        gather(nodes[term.node] + s * N, content.elems().data(), N);
        const Vec piece = plan.download(h, content);
        std::copy(piece.elems().begin(), piece.elems().end(), downloads.begin() + static_cast<std::ptrdiff_t>(offsets[h]));
      }
      plan.recover(downloads, node);
      scatter(node.data(), nodes[failed] + s * N, N);
    });
    if (report) {
      msrc_repair_report out{};
      out.failed = failed;
      out.helper_count = static_cast<uint32_t>(plan.helpers().size());
      for (size_t h = 0; h < plan.helpers().size(); ++h) {
        const auto& term = plan.helpers()[h];
        out.helpers[h] = static_cast<uint32_t>(term.node);
        out.downloads[h] = static_cast<uint64_t>(msrc::linalg::rank(term.download)) * stripes;
      }
      out.bandwidth = plan.bandwidth();
      const auto opt = optimal_bandwidth(*code);
      out.optimal_num = opt.num;
      out.optimal_den = opt.den;
      *report = out;
    }
    return MSRC_OK;
  });
}

msrc_status msrc_check_residual(const msrc_code* code, size_t stripes, const uint16_t* const* nodes,
                                int* valid) {
  if (!code || !valid || (!nodes && stripes)) return fail(MSRC_E_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const auto& pcm = code->pcm();
    const size_t N = pcm.N(), n = pcm.n();
    for (size_t i = 0; i < n && stripes; ++i) check_symbols(*code, nodes[i], stripes * N, i);
    std::vector<char> ok(stripes, 0);
    for_stripes(stripes, [&](size_t s) {
      msrc::Codeword word;
      for (size_t i = 0; i < n; ++i) {
        Vec v(pcm.field(), N);
        gather(nodes[i] + s * N, v.elems().data(), N);
        word.nodes.push_back(std::move(v));
      }
      ok[s] = msrc::codec::parity_residual(pcm, word).is_zero() ? 1 : 0;
    });
    *valid = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; }) ? 1 : 0;
    return MSRC_OK;
  });
}

msrc_status msrc_verify(const msrc_code* code, msrc_verify_report* report, char* log,
                        size_t log_size) {
  if (!code) return fail(MSRC_E_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    struct Visitor {
      msrc::verify::PropertyReport operator()(const msrc::c1::C1Code& c) const {
        return msrc::verify::verify_c1(c);
      }
      msrc::verify::PropertyReport operator()(const msrc::codec::ShortenedCode& c) const {
        return msrc::verify::verify_shortened(c);
      }
      msrc::verify::PropertyReport operator()(const msrc::c2::C2Code& c) const {
        return msrc::verify::verify_c2(c);
      }
    };
    const auto r = std::visit(Visitor{}, code->impl);
    if (report) {
      msrc_verify_report out{};
      out.lambda_violations = r.lambda_violations;
      out.subsets_total = r.mds.total_subsets;
      out.subsets_checked = r.mds.checked;
      out.subsets_failed = r.mds.failures.size();
      out.subsets_exhaustive = r.mds.exhaustive ? 1 : 0;
      out.factorization_checked = r.factorization.checked;
      out.factorization_failed = r.factorization.failed;
      out.identity_checked = r.self_identity.checked;
      out.identity_failed = r.self_identity.failed;
      out.structure_checked = r.structure.checked;
      out.structure_failed = r.structure.failed;
      out.repairs_total = r.repair_total;
      out.repairs_checked = r.repairs.checked;
      out.repairs_failed = r.repairs.failed;
      out.ok = r.ok() ? 1 : 0;
      *report = out;
    }
    if (log && log_size) {
      std::string text = r.summary() + "\n";
      for (const auto& w : r.witnesses) text += "  " + w + "\n";
      const size_t len = std::min(text.size(), log_size - 1);
      std::memcpy(log, text.data(), len);
      log[len] = '\0';
    }
    return MSRC_OK;
  });
}

}  // extern "C"
