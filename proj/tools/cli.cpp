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
#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "container.hpp"
#include "msrc/msrc.h"

namespace msrc::cli {

namespace {

struct CodeDeleter {
  void operator()(msrc_code* c) const { msrc_code_destroy(c); }
};
using CodePtr = std::unique_ptr<msrc_code, CodeDeleter>;

// Raised inside a command to leave with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

std::string describe(msrc_status status) {
  std::string text = msrc_status_string(status);
  const std::string detail = msrc_last_error();
  if (!detail.empty()) text += ": " + detail;
  return text;
}

std::string rational(std::int64_t num, std::int64_t den) {
  const auto g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string decimal(std::int64_t num, std::int64_t den) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(num) / static_cast<double>(den));
  return buf;
}

struct CodeArgs {
  std::uint32_t n = 0, k = 0, d = 0;
  std::optional<std::uint32_t> s;
  std::uint32_t q = 0;
  bool shorten = false;
  bool byte_mode = false;
  int corruption = MSRC_CORRUPT_NONE;
};

CodePtr create(const CodeArgs& a, int failure_exit) {
  if (!a.shorten && !a.s && a.n % 2 == 1) {
    throw Exit{kExitUsage, "odd n=" + std::to_string(a.n) +
                               " has no direct construction; pass --shorten to derive it from (" +
                               std::to_string(a.n + 1) + "," + std::to_string(a.k + 1) + "," +
                               std::to_string(a.d + 1) + ")"};
  }
  msrc_options opts{};
  opts.q = a.q;
  opts.byte_mode = a.byte_mode ? 1 : 0;
  opts.shorten = a.shorten ? 1 : 0;
  opts.corruption = a.corruption;
  msrc_code* raw = nullptr;
  const auto status = msrc_code_create(a.s ? MSRC_C2 : MSRC_C1, a.n, a.k, a.d, a.s.value_or(1),
                                       &opts, &raw);
  if (status != MSRC_OK) throw Exit{failure_exit, describe(status)};
  return CodePtr(raw);
}

msrc_info info_of(const msrc_code* code) {
  msrc_info info{};
  const auto status = msrc_code_get_info(code, &info);
  if (status != MSRC_OK) throw Exit{kExitUsage, describe(status)};
  return info;
}

// Rebuilds the code a container was written with.
CodePtr code_for(const Container& c) {
  CodeArgs a;
  a.q = c.q();
  if (c.construction == 1) {
    a.n = c.n;
    a.k = c.k;
    a.d = c.d;
    a.shorten = c.n % 2 == 1;
  } else {
    if (c.s == 0 || c.n % c.s != 0 || c.k >= c.n || c.d + 1 != c.n) {
      throw FormatError("inconsistent replicated-code header");
    }
    const std::uint32_t base_n = c.n / c.s;
    const std::uint32_t r = c.n - c.k;
    if (r >= base_n) throw FormatError("inconsistent replicated-code header");
    a.n = base_n;
    a.k = base_n - r;
    a.d = base_n - 1;
    a.s = c.s;
  }
  try {
    return create(a, kExitIo);
  } catch (const Exit& e) {
    throw FormatError("header does not describe a valid code: " + e.message);
  }
}

struct Loaded {
  Container container;
  CodePtr code;
  msrc_info info;
};

Loaded load(const std::string& path) {
  const auto bytes = read_file(path);
  Container header = parse_header(bytes);
  CodePtr code = code_for(header);
  const msrc_info info = info_of(code.get());
  Container full = parse(bytes, info.N);
  return {std::move(full), std::move(code), info};
}

std::vector<std::uint16_t*> pointers(Container& c) {
  std::vector<std::uint16_t*> out;
  for (auto& node : c.nodes) out.push_back(node.data());
  return out;
}

void print_sheet(std::ostream& out, const msrc_info& info) {
  out << "construction=" << (info.construction == MSRC_C1 ? "C1" : "C2");
  if (info.shortened) {
    out << " (shortened from (" << info.n + 1 << "," << info.k + 1 << "," << info.d + 1 << "))";
  }
  out << "\n";
  out << "n=" << info.n << " k=" << info.k << " d=" << info.d << " r=" << info.r;
  if (info.construction == MSRC_C2) out << " s=" << info.s;
  out << "\n";
  out << "w=" << info.w << " m=" << info.m << " N=" << info.N << "\n";
  out << "q=" << info.q << " p=" << info.p << " e=" << info.e << " c=" << info.primitive << "\n";
  out << "gamma_opt=" << rational(info.optimal_num, info.optimal_den) << "\n";
  out << "repair_bandwidth=" << info.repair_bandwidth << "\n";
  const auto ratio_num = static_cast<std::int64_t>(info.repair_bandwidth) * info.optimal_den;
  out << "ratio=" << rational(ratio_num, info.optimal_num) << " ("
      << decimal(ratio_num, info.optimal_num) << ")\n";
  if (info.construction == MSRC_C2) {
    out << "epsilon=" << rational(info.epsilon_num, info.epsilon_den) << "\n";
  }
}

int cmd_info(const CodeArgs& a, std::ostream& out) {
  auto code = create(a, kExitUsage);
  print_sheet(out, info_of(code.get()));
  return kExitOk;
}

int cmd_encode(CodeArgs a, const std::string& input, const std::string& output, std::ostream& out) {
  a.byte_mode = true;
  auto code = create(a, kExitUsage);
  const auto info = info_of(code.get());
  const auto bytes = read_file(input);
  const std::size_t stripe_bytes = static_cast<std::size_t>(info.k) * info.N;
  const std::size_t shards = (bytes.size() + stripe_bytes - 1) / stripe_bytes;
  if (shards > 0xffffffffu) throw Exit{kExitUsage, "input too large"};

  Container c;
  c.construction = static_cast<std::uint8_t>(info.construction);
  c.p = static_cast<std::uint16_t>(info.p);
  c.e = static_cast<std::uint8_t>(info.e);
  c.n = static_cast<std::uint16_t>(info.n);
  c.k = static_cast<std::uint16_t>(info.k);
  c.d = static_cast<std::uint16_t>(info.d);
  c.s = static_cast<std::uint16_t>(info.s);
  c.length = bytes.size();
  c.shards = static_cast<std::uint32_t>(shards);
  c.nodes.assign(info.n, std::vector<std::uint16_t>(shards * info.N, 0));
  for (std::size_t pos = 0; pos < bytes.size(); ++pos) {
    const std::size_t stripe = pos / stripe_bytes;
    const std::size_t within = pos % stripe_bytes;
    c.nodes[within / info.N][stripe * info.N + within % info.N] = bytes[pos];
  }
  auto ptrs = pointers(c);
  const auto status = msrc_encode(code.get(), shards, ptrs.data());
  if (status != MSRC_OK) throw Exit{kExitIntegrity, describe(status)};
  write_file(output, serialize(c));
  out << "encoded " << bytes.size() << " bytes into " << shards << " shards: n=" << info.n
      << " k=" << info.k << " N=" << info.N << " q=" << info.q << "\n";
  return kExitOk;
}

int cmd_decode(const std::string& input, const std::string& output,
               const std::optional<std::vector<std::uint32_t>>& available, std::ostream& out) {
  auto loaded = load(input);
  auto& c = loaded.container;
  const auto& info = loaded.info;
  std::vector<std::uint32_t> avail;
  if (available) {
    avail = *available;
    for (auto i : avail) {
      if (i >= info.n) throw Exit{kExitUsage, "node " + std::to_string(i) + " out of range"};
    }
    std::vector<bool> keep(info.n, false);
    for (auto i : avail) keep[i] = true;
    for (std::uint32_t i = 0; i < info.n; ++i) {
      if (!keep[i]) std::fill(c.nodes[i].begin(), c.nodes[i].end(), 0);
    }
  } else {
    for (std::uint32_t i = 0; i < info.n; ++i) avail.push_back(i);
  }
  auto ptrs = pointers(c);
  const auto status = msrc_reconstruct(loaded.code.get(), c.shards, avail.data(), avail.size(), ptrs.data());
  if (status == MSRC_E_INCONSISTENT || status == MSRC_E_BAD_SYMBOL) {
    throw Exit{kExitIntegrity, describe(status)};
  }
  if (status != MSRC_OK) throw Exit{kExitUsage, describe(status)};

  const std::size_t stripe_bytes = static_cast<std::size_t>(info.k) * info.N;
  if (c.length > static_cast<std::uint64_t>(c.shards) * stripe_bytes) {
    throw FormatError("recorded length exceeds the payload");
  }
  std::vector<std::uint8_t> bytes(c.length);
  for (std::size_t pos = 0; pos < bytes.size(); ++pos) {
    const std::size_t stripe = pos / stripe_bytes;
    const std::size_t within = pos % stripe_bytes;
    const auto v = c.nodes[within / info.N][stripe * info.N + within % info.N];
    if (v > 0xff) throw Exit{kExitIntegrity, "decoded symbol " + std::to_string(v) + " is not a byte"};
    bytes[pos] = static_cast<std::uint8_t>(v);
  }
  write_file(output, bytes);
  out << "decoded " << bytes.size() << " bytes from " << avail.size() << " nodes\n";
  return kExitOk;
}

int cmd_repair(const std::string& input, std::uint32_t failed,
               const std::optional<std::vector<std::uint32_t>>& helpers,
               const std::optional<std::string>& output, std::ostream& out) {
  auto loaded = load(input);
  auto& c = loaded.container;
  const auto& info = loaded.info;
  if (failed >= info.n) throw Exit{kExitUsage, "--fail " + std::to_string(failed) + " out of range"};
  std::vector<std::uint32_t> hs = helpers.value_or(std::vector<std::uint32_t>{});
  if (!helpers && info.d + 1 != info.n) {
    throw Exit{kExitUsage, "--helpers is required: choose " + std::to_string(info.d) + " of the other nodes"};
  }
  const auto stored = c.nodes[failed];
  std::fill(c.nodes[failed].begin(), c.nodes[failed].end(), 0);
  auto ptrs = pointers(c);
  msrc_repair_report report{};
  const auto status =
      msrc_repair(loaded.code.get(), c.shards, failed, hs.data(), hs.size(), ptrs.data(), &report);
  if (status == MSRC_E_BAD_HELPER_SET || status == MSRC_E_OUT_OF_RANGE) {
    throw Exit{kExitUsage, describe(status)};
  }
  if (status == MSRC_E_BAD_SYMBOL) throw Exit{kExitIntegrity, describe(status)};
  if (status != MSRC_OK) throw Exit{kExitPropertyFailure, describe(status)};

  int valid = 0;
  const std::vector<const std::uint16_t*> cptrs(ptrs.begin(), ptrs.end());
  const auto check = msrc_check_residual(loaded.code.get(), c.shards, cptrs.data(), &valid);
  if (check != MSRC_OK) throw Exit{kExitIntegrity, describe(check)};

  out << "repaired node " << failed << " over " << c.shards << " shards\n";
  for (std::uint32_t h = 0; h < report.helper_count; ++h) {
    const auto per_stripe = c.shards ? report.downloads[h] / c.shards : 0;
    out << "  helper " << report.helpers[h] << ": " << per_stripe << " symbols per stripe\n";
  }
  const auto ratio_num = static_cast<std::int64_t>(report.bandwidth) * report.optimal_den;
  out << "bandwidth=" << report.bandwidth << " symbols per stripe\n";
  out << "gamma_opt=" << rational(report.optimal_num, report.optimal_den) << "\n";
  out << "ratio=" << rational(ratio_num, report.optimal_num) << " (" << decimal(ratio_num, report.optimal_num)
      << ")\n";
  if (!valid) {
    throw Exit{kExitIntegrity, "repaired container fails the parity checks; helper data is corrupt"};
  }
  out << (stored == c.nodes[failed] ? "repaired node matches the stored copy\n"
                                    : "stored copy of the node was damaged and has been rewritten\n");
  write_file(output.value_or(input), serialize(c));
  return kExitOk;
}

int print_verify(const msrc_code* code, std::ostream& out) {
  msrc_verify_report report{};
  std::string log(16384, '\0');
  const auto status = msrc_verify(code, &report, log.data(), log.size());
  if (status != MSRC_OK) throw Exit{kExitPropertyFailure, describe(status)};
  log.resize(log.find('\0'));
  const auto first = log.find('\n');
  out << log.substr(0, first) << "\n";
  out << "  scalar conditions: " << report.lambda_violations << " violations\n";
  out << "  factorization: " << report.factorization_checked - report.factorization_failed << "/"
      << report.factorization_checked << "\n";
  out << "  closed-form identity: " << report.identity_checked - report.identity_failed << "/"
      << report.identity_checked << "\n";
  out << "  structure: " << report.structure_checked - report.structure_failed << "/"
      << report.structure_checked << "\n";
  if (!report.ok) {
    out << "witnesses:\n" << log.substr(first + 1);
    out << "FAIL\n";
    return kExitPropertyFailure;
  }
  out << "OK\n";
  return kExitOk;
}

int cmd_verify(const std::optional<std::string>& container, const CodeArgs& a, std::ostream& out) {
  if (!container) return print_verify(create(a, kExitUsage).get(), out);
  auto loaded = load(*container);
  int valid = 0;
  std::vector<const std::uint16_t*> ptrs;
  for (const auto& node : loaded.container.nodes) ptrs.push_back(node.data());
  const auto status = msrc_check_residual(loaded.code.get(), loaded.container.shards, ptrs.data(), &valid);
  const int result = print_verify(loaded.code.get(), out);
  if (status != MSRC_OK || !valid) {
    out << "payload: parity checks fail\n";
    return kExitIntegrity;
  }
  out << "payload: " << loaded.container.shards << " shards pass the parity checks\n";
  return result;
}

void add_code_options(CLI::App* sub, CodeArgs& a, bool positional) {
  if (positional) {
    sub->add_option("n", a.n, "code length")->required();
    sub->add_option("k", a.k, "dimension")->required();
    sub->add_option("d", a.d, "repair degree")->required();
  }
  sub->add_option("--s", a.s, "replication factor; n k d then describe the base code with d = n-1");
  sub->add_option("--q", a.q, "field order (default: smallest valid)");
  sub->add_flag("--shorten", a.shorten, "derive an odd-length code from (n+1, k+1, d+1)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"msrc: MSR erasure codes with optimal repair bandwidth", "msrc"};
  app.require_subcommand(1);

  CodeArgs info_args;
  auto* info = app.add_subcommand("info", "print the parameter sheet of a code");
  add_code_options(info, info_args, true);
  info->add_flag("--byte", info_args.byte_mode, "byte mode: q is a prime >= 257");

  CodeArgs enc_args;
  std::string enc_in, enc_out;
  auto* enc = app.add_subcommand("encode", "encode a file into a container");
  enc->add_option("input", enc_in, "input file")->required();
  enc->add_option("output", enc_out, "output container")->required();
  add_code_options(enc, enc_args, true);

  std::string dec_in, dec_out;
  std::optional<std::vector<std::uint32_t>> dec_avail;
  auto* dec = app.add_subcommand("decode", "recover the original file from a container");
  dec->add_option("container", dec_in, "input container")->required();
  dec->add_option("output", dec_out, "output file")->required();
  dec->add_option("--available", dec_avail, "nodes to decode from (default: all)");

  std::string rep_in;
  std::uint32_t rep_fail = 0;
  std::optional<std::vector<std::uint32_t>> rep_helpers;
  std::optional<std::string> rep_out;
  auto* rep = app.add_subcommand("repair", "regenerate one node from helper downloads");
  rep->add_option("container", rep_in, "container")->required();
  rep->add_option("--fail", rep_fail, "node to regenerate")->required();
  rep->add_option("--helpers", rep_helpers, "helper nodes (default: all survivors)");
  rep->add_option("-o,--output", rep_out, "write the repaired container here instead of in place");

  CodeArgs ver_args;
  std::optional<std::string> ver_container;
  std::vector<std::uint32_t> ver_params;
  std::string corrupt;
  auto* ver = app.add_subcommand("verify", "check MDS, repair and structural properties");
  ver->add_option("container", ver_container, "container to verify");
  ver->add_option("--params", ver_params, "n k d of a code to verify")->expected(3);
  add_code_options(ver, ver_args, false);
  ver->add_option("--debug-corrupt-lambda", corrupt, "break one scalar condition (T1 or T2)")
      ->check(CLI::IsMember({"T1", "T2"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*info) return cmd_info(info_args, out);
    if (*enc) return cmd_encode(enc_args, enc_in, enc_out, out);
    if (*dec) return cmd_decode(dec_in, dec_out, dec_avail, out);
    if (*rep) return cmd_repair(rep_in, rep_fail, rep_helpers, rep_out, out);
    if (*ver) {
      if (ver_container.has_value() == !ver_params.empty()) {
        throw Exit{kExitUsage, "verify needs either a container or --params n k d"};
      }
      if (ver_container && (!corrupt.empty() || ver_args.s || ver_args.q || ver_args.shorten)) {
        throw Exit{kExitUsage, "code options apply to --params only; a container carries its own"};
      }
      if (!ver_params.empty()) {
        ver_args.n = ver_params[0];
        ver_args.k = ver_params[1];
        ver_args.d = ver_params[2];
      }
      if (corrupt == "T1") ver_args.corruption = MSRC_CORRUPT_PAIRED;
      if (corrupt == "T2") ver_args.corruption = MSRC_CORRUPT_WITHIN_NODE;
      return cmd_verify(ver_container, ver_args, out);
    }
  } catch (const Exit& e) {
    if (!e.message.empty()) err << "error: " << e.message << "\n";
    return e.code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace msrc::cli
