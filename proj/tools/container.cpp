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
#include "container.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>

namespace msrc::cli {

namespace {

void put(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int b = 0; b < bytes; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get(const std::vector<std::uint8_t>& in, std::size_t& pos, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(in[pos + b]) << (8 * b);
  pos += bytes;
  return v;
}

}  // namespace

std::uint32_t Container::q() const {
  std::uint32_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  return q;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path);
  return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path + ": " + std::strerror(errno));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("cannot write " + path);
}

std::vector<std::uint8_t> serialize(const Container& c) {
  std::vector<std::uint8_t> out;
  std::size_t symbols = 0;
  for (const auto& node : c.nodes) symbols += node.size();
  out.reserve(kHeaderSize + 2 * symbols);
  for (char ch : {'M', 'S', 'R', 'C'}) out.push_back(static_cast<std::uint8_t>(ch));
  put(out, kContainerVersion, 1);
  put(out, c.construction, 1);
  put(out, c.p, 2);
  put(out, c.e, 1);
  put(out, c.n, 2);
  put(out, c.k, 2);
  put(out, c.d, 2);
  put(out, c.s, 2);
  put(out, c.length, 8);
  put(out, c.shards, 4);
  for (const auto& node : c.nodes) {
    for (auto v : node) put(out, v, 2);
  }
  return out;
}

Container parse_header(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("file too short for a container header");
  if (std::memcmp(bytes.data(), "MSRC", 4) != 0) throw FormatError("bad magic, not a container");
  std::size_t pos = 4;
  const auto version = get(bytes, pos, 1);
  if (version != kContainerVersion) {
    throw FormatError("unsupported container version " + std::to_string(version));
  }
  Container c;
  c.construction = static_cast<std::uint8_t>(get(bytes, pos, 1));
  if (c.construction != 1 && c.construction != 2) {
    throw FormatError("unknown construction flag " + std::to_string(c.construction));
  }
  c.p = static_cast<std::uint16_t>(get(bytes, pos, 2));
  c.e = static_cast<std::uint8_t>(get(bytes, pos, 1));
  c.n = static_cast<std::uint16_t>(get(bytes, pos, 2));
  c.k = static_cast<std::uint16_t>(get(bytes, pos, 2));
  c.d = static_cast<std::uint16_t>(get(bytes, pos, 2));
  c.s = static_cast<std::uint16_t>(get(bytes, pos, 2));
  c.length = get(bytes, pos, 8);
  c.shards = static_cast<std::uint32_t>(get(bytes, pos, 4));
  std::uint64_t q = 1;
  for (int i = 0; i < c.e && q <= 65535; ++i) q *= c.p;
  if (c.p < 2 || c.e < 1 || q > 65535) throw FormatError("bad field in header");
  return c;
}

Container parse(const std::vector<std::uint8_t>& bytes, std::size_t symbols_per_node_per_shard) {
  Container c = parse_header(bytes);
  const std::uint64_t per_node = static_cast<std::uint64_t>(symbols_per_node_per_shard) * c.shards;
  const std::uint64_t expected = kHeaderSize + 2 * per_node * c.n;
  if (bytes.size() != expected) {
    throw FormatError("payload size " + std::to_string(bytes.size()) + " bytes, expected " +
                      std::to_string(expected));
  }
  std::size_t pos = kHeaderSize;
  c.nodes.assign(c.n, std::vector<std::uint16_t>(per_node));
  for (auto& node : c.nodes) {
    for (auto& v : node) v = static_cast<std::uint16_t>(get(bytes, pos, 2));
  }
  return c;
}

}  // namespace msrc::cli
