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

// On-disk layout, all integers little-endian:
//   "MSRC" | version u8 (=1) | construction u8 (1 or 2) | p u16 | e u8 |
//   n, k, d, s u16 | original length u64 | shard count u32 |
//   n payloads of N * shards u16 symbols, node by node.
// A C1 container with odd n holds a shortened code.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace msrc::cli {

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 2 + 1 + 4 * 2 + 8 + 4;

struct Container {
  std::uint8_t construction = 1;
  std::uint16_t p = 0;
  std::uint8_t e = 0;
  std::uint16_t n = 0, k = 0, d = 0, s = 1;
  std::uint64_t length = 0;
  std::uint32_t shards = 0;
  std::vector<std::vector<std::uint16_t>> nodes;

  std::uint32_t q() const;
};

// Unreadable or unwritable file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Readable file that is not a well-formed container.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> serialize(const Container& c);
// Checks magic, version, flag and that the payload length matches
// n * symbols_per_node * 2 bytes exactly.
Container parse(const std::vector<std::uint8_t>& bytes, std::size_t symbols_per_node_per_shard);
// Header only, for deriving the sub-packetization before parse().
Container parse_header(const std::vector<std::uint8_t>& bytes);

}  // namespace msrc::cli
