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
#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "container.hpp"

namespace fs = std::filesystem;

namespace {

using msrc::cli::Container;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = msrc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("msrc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::vector<std::uint8_t> random_file(const std::string& name, std::size_t size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bytes(size);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    msrc::cli::write_file(path(name), bytes);
    return bytes;
  }

  fs::path dir_;
};

TEST(CliInfo, ExampleSheet) {
  const auto r = cli({"info", "6", "3", "4"});
  EXPECT_EQ(r.code, 0);
  for (const char* needle : {"N=8", "q=13", "gamma_opt=16", "w=2", "m=3", "r=3"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle << "\n" << r.out;
  }
}

TEST(CliInfo, ReplicatedSheet) {
  const auto r = cli({"info", "4", "2", "3", "--s", "2"});
  EXPECT_EQ(r.code, 0);
  for (const char* needle : {"q=9", "gamma_opt=14", "ratio=8/7", "epsilon=1/7", "repair_bandwidth=16"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle << "\n" << r.out;
  }
}

TEST(CliInfo, UsageErrors) {
  EXPECT_EQ(cli({"info", "5", "3", "4"}).code, 2);
  EXPECT_EQ(cli({"info", "5", "3", "4", "--shorten"}).code, 0);
  EXPECT_EQ(cli({"info", "6", "3", "3"}).code, 2);
  EXPECT_EQ(cli({"info", "6", "3", "4", "--q", "11"}).code, 2);
  EXPECT_EQ(cli({"info"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
}

TEST_F(CliTest, RoundTripAndDecodeFromAnyThree) {
  const auto data = random_file("in.bin", 5000, 1);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto header = msrc::cli::parse_header(msrc::cli::read_file(path("c.msrc")));
  EXPECT_EQ(header.q(), 257u);
  EXPECT_EQ(header.length, 5000u);
  EXPECT_EQ(header.shards, (5000u + 23) / 24);
  EXPECT_EQ(fs::file_size(path("c.msrc")), msrc::cli::kHeaderSize + 6u * 8 * header.shards * 2);
  ASSERT_EQ(cli({"decode", path("c.msrc"), path("out.bin")}).code, 0);
  EXPECT_EQ(msrc::cli::read_file(path("out.bin")), data);
  const auto r = cli({"decode", path("c.msrc"), path("out2.bin"), "--available", "2", "4", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(msrc::cli::read_file(path("out2.bin")), data);
}

TEST_F(CliTest, MegabyteDropAnyThree) {
  const auto data = random_file("in.bin", 1 << 20, 12);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto original = msrc::cli::read_file(path("c.msrc"));
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      for (int c = b + 1; c < 6; ++c) {
        auto damaged = msrc::cli::parse(original, 8);
        std::vector<std::string> args{"decode", path("d.msrc"), path("out.bin"), "--available"};
        for (int i = 0; i < 6; ++i) {
          if (i == a || i == b || i == c) {
            for (auto& x : damaged.nodes[i]) x = 0;
          } else {
            args.push_back(std::to_string(i));
          }
        }
        msrc::cli::write_file(path("d.msrc"), msrc::cli::serialize(damaged));
        ASSERT_EQ(cli(args).code, 0);
        ASSERT_EQ(msrc::cli::read_file(path("out.bin")), data) << a << b << c;
      }
    }
  }
}

TEST_F(CliTest, SystematicLayout) {
  // Node i of stripe s holds bytes [s*kN + i*N, s*kN + (i+1)*N).
  const auto data = random_file("in.bin", 100, 2);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto bytes = msrc::cli::read_file(path("c.msrc"));
  const auto header = msrc::cli::parse_header(bytes);
  const auto c = msrc::cli::parse(bytes, 8);
  ASSERT_EQ(c.nodes.size(), 6u);
  for (std::size_t s = 0; s < header.shards; ++s) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t a = 0; a < 8; ++a) {
        const std::size_t pos = s * 24 + i * 8 + a;
        const std::uint16_t expected = pos < data.size() ? data[pos] : 0;
        ASSERT_EQ(c.nodes[i][s * 8 + a], expected);
      }
    }
  }
}

TEST_F(CliTest, HeaderFields) {
  random_file("in.bin", 10, 3);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto bytes = msrc::cli::read_file(path("c.msrc"));
  ASSERT_GE(bytes.size(), 30u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "MSRC");
  EXPECT_EQ(bytes[4], 1);  // version
  EXPECT_EQ(bytes[5], 1);  // construction
  EXPECT_EQ(bytes[6] | (bytes[7] << 8), 257);
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(bytes[9] | (bytes[10] << 8), 6);
  EXPECT_EQ(bytes[11] | (bytes[12] << 8), 3);
  EXPECT_EQ(bytes[13] | (bytes[14] << 8), 4);
  EXPECT_EQ(bytes[15] | (bytes[16] << 8), 1);
  EXPECT_EQ(bytes[17], 10);
  EXPECT_EQ(bytes[25] | (bytes[26] << 8), 1);
}

TEST_F(CliTest, KibibyteShardCount) {
  random_file("in.bin", 1024, 13);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto header = msrc::cli::parse_header(msrc::cli::read_file(path("c.msrc")));
  // ceil(1024 / (k N)) with k N = 24.
  EXPECT_EQ(header.shards, (1024u + 24 - 1) / 24);
}

TEST_F(CliTest, EmptyFile) {
  random_file("empty.bin", 0, 4);
  ASSERT_EQ(cli({"encode", path("empty.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  ASSERT_EQ(cli({"decode", path("c.msrc"), path("out.bin")}).code, 0);
  EXPECT_TRUE(msrc::cli::read_file(path("out.bin")).empty());
}

TEST_F(CliTest, DecodeErrors) {
  random_file("in.bin", 300, 5);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  EXPECT_EQ(cli({"decode", path("c.msrc"), path("o"), "--available", "0", "1"}).code, 2);
  EXPECT_EQ(cli({"decode", path("missing.msrc"), path("o")}).code, 3);
  msrc::cli::write_file(path("junk.msrc"), {'J', 'U', 'N', 'K'});
  EXPECT_EQ(cli({"decode", path("junk.msrc"), path("o")}).code, 3);
  // A parity node corrupted: decoding from all six nodes sees the conflict.
  auto bytes = msrc::cli::read_file(path("c.msrc"));
  const auto header = msrc::cli::parse_header(bytes);
  auto c = msrc::cli::parse(bytes, 8);
  c.nodes[4][0] = static_cast<std::uint16_t>((c.nodes[4][0] + 1) % 257);
  msrc::cli::write_file(path("bad.msrc"), msrc::cli::serialize(c));
  EXPECT_EQ(cli({"decode", path("bad.msrc"), path("o")}).code, 4);
  // Excluding the bad node decodes cleanly.
  EXPECT_EQ(cli({"decode", path("bad.msrc"), path("o"), "--available", "0", "1", "2"}).code, 0);
  (void)header;
  // Truncated payload.
  bytes.resize(bytes.size() - 2);
  msrc::cli::write_file(path("short.msrc"), bytes);
  EXPECT_EQ(cli({"decode", path("short.msrc"), path("o")}).code, 3);
}

TEST_F(CliTest, EncodeErrors) {
  random_file("in.bin", 10, 6);
  EXPECT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4", "--q", "13"}).code, 2);
  EXPECT_EQ(cli({"encode", path("nope.bin"), path("c.msrc"), "6", "3", "4"}).code, 3);
  EXPECT_EQ(cli({"encode", path("in.bin"), path("no/such/dir/c.msrc"), "6", "3", "4"}).code, 3);
}

TEST_F(CliTest, RepairEachNodeInPlace) {
  random_file("in.bin", 2000, 7);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto original = msrc::cli::read_file(path("c.msrc"));
  for (int i = 0; i < 6; ++i) {
    std::vector<std::string> args{"repair", path("c.msrc"), "--fail", std::to_string(i), "--helpers"};
    for (int j = 0, added = 0; j < 6 && added < 4; ++j) {
      if (j != i) args.push_back(std::to_string(j)), ++added;
    }
    const auto r = cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("bandwidth=16"), std::string::npos) << r.out;
    EXPECT_EQ(msrc::cli::read_file(path("c.msrc")), original);
  }
}

TEST_F(CliTest, RepairRestoresDamagedNode) {
  random_file("in.bin", 700, 8);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  const auto original = msrc::cli::read_file(path("c.msrc"));
  auto c = msrc::cli::parse(original, 8);
  for (auto& x : c.nodes[1]) x = 0;
  msrc::cli::write_file(path("d.msrc"), msrc::cli::serialize(c));
  const auto r = cli({"repair", path("d.msrc"), "--fail", "1", "--helpers", "0", "2", "3", "5", "-o", path("r.msrc")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(msrc::cli::read_file(path("r.msrc")), original);
}

TEST_F(CliTest, RepairErrors) {
  random_file("in.bin", 100, 9);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "6", "3", "4"}).code, 0);
  EXPECT_EQ(cli({"repair", path("c.msrc"), "--fail", "0"}).code, 2);
  EXPECT_EQ(cli({"repair", path("c.msrc"), "--fail", "0", "--helpers", "1", "2"}).code, 2);
  EXPECT_EQ(cli({"repair", path("c.msrc"), "--fail", "9", "--helpers", "1", "2", "3", "4"}).code, 2);
  EXPECT_EQ(cli({"repair", path("c.msrc")}).code, 2);
  // A corrupted helper leaves a nonzero residual after repair.
  auto c = msrc::cli::parse(msrc::cli::read_file(path("c.msrc")), 8);
  c.nodes[2][3] = static_cast<std::uint16_t>((c.nodes[2][3] + 1) % 257);
  msrc::cli::write_file(path("bad.msrc"), msrc::cli::serialize(c));
  EXPECT_EQ(cli({"repair", path("bad.msrc"), "--fail", "0", "--helpers", "1", "2", "3", "4", "-o", path("x")}).code, 4);
}

TEST_F(CliTest, ReplicatedAndShortenedContainers) {
  const auto data = random_file("in.bin", 1234, 10);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c2.msrc"), "4", "2", "3", "--s", "2"}).code, 0);
  const auto c2 = msrc::cli::parse_header(msrc::cli::read_file(path("c2.msrc")));
  EXPECT_EQ(c2.construction, 2);
  EXPECT_EQ(c2.n, 8);
  EXPECT_EQ(c2.k, 6);
  EXPECT_EQ(c2.d, 7);
  EXPECT_EQ(c2.s, 2);
  const auto original = msrc::cli::read_file(path("c2.msrc"));
  for (int i = 0; i < 8; ++i) {
    const auto r = cli({"repair", path("c2.msrc"), "--fail", std::to_string(i)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ratio=8/7"), std::string::npos) << r.out;
  }
  EXPECT_EQ(msrc::cli::read_file(path("c2.msrc")), original);
  ASSERT_EQ(cli({"decode", path("c2.msrc"), path("o2"), "--available", "0", "2", "3", "4", "5", "7"}).code, 0);
  EXPECT_EQ(msrc::cli::read_file(path("o2")), data);

  ASSERT_EQ(cli({"encode", path("in.bin"), path("s.msrc"), "5", "3", "4", "--shorten"}).code, 0);
  const auto s = msrc::cli::parse_header(msrc::cli::read_file(path("s.msrc")));
  EXPECT_EQ(s.n, 5);
  ASSERT_EQ(cli({"decode", path("s.msrc"), path("o3"), "--available", "1", "3", "4"}).code, 0);
  EXPECT_EQ(msrc::cli::read_file(path("o3")), data);
  ASSERT_EQ(cli({"repair", path("s.msrc"), "--fail", "2"}).code, 0);
  ASSERT_EQ(cli({"verify", path("s.msrc")}).code, 0);
}

TEST(CliVerify, ParamsAndControls) {
  const auto ok = cli({"verify", "--params", "6", "3", "4"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("20/20 subsets, 30/30 repairs"), std::string::npos) << ok.out;
  const auto c2 = cli({"verify", "--params", "4", "2", "3", "--s", "2"});
  EXPECT_EQ(c2.code, 0);
  EXPECT_NE(c2.out.find("28/28 subsets, 8/8 repairs"), std::string::npos) << c2.out;
  EXPECT_EQ(cli({"verify", "--params", "6", "3", "4", "--debug-corrupt-lambda", "T1"}).code, 1);
  EXPECT_EQ(cli({"verify", "--params", "6", "3", "4", "--debug-corrupt-lambda", "T2"}).code, 1);
  EXPECT_EQ(cli({"verify", "--params", "6", "3", "4", "--debug-corrupt-lambda", "T3"}).code, 2);
  EXPECT_EQ(cli({"verify"}).code, 2);
}

TEST_F(CliTest, VerifyContainer) {
  random_file("in.bin", 500, 11);
  ASSERT_EQ(cli({"encode", path("in.bin"), path("c.msrc"), "4", "2", "3"}).code, 0);
  EXPECT_EQ(cli({"verify", path("c.msrc")}).code, 0);
  EXPECT_EQ(cli({"verify", path("c.msrc"), "--params", "4", "2", "3"}).code, 2);
  EXPECT_EQ(cli({"verify", path("c.msrc"), "--q", "13"}).code, 2);
  auto c = msrc::cli::parse(msrc::cli::read_file(path("c.msrc")), 4);
  c.nodes[3][0] = static_cast<std::uint16_t>((c.nodes[3][0] + 1) % 257);
  msrc::cli::write_file(path("bad.msrc"), msrc::cli::serialize(c));
  EXPECT_EQ(cli({"verify", path("bad.msrc")}).code, 4);
}

TEST(Container, SerializeParseRoundTrip) {
  Container c;
  c.construction = 2;
  c.p = 3;
  c.e = 2;
  c.n = 8, c.k = 6, c.d = 7, c.s = 2;
  c.length = 0x0102030405ull;
  c.shards = 2;
  for (int i = 0; i < 8; ++i) c.nodes.push_back(std::vector<std::uint16_t>(8, static_cast<std::uint16_t>(i)));
  const auto bytes = msrc::cli::serialize(c);
  EXPECT_EQ(bytes.size(), 29u + 8 * 8 * 2);
  const auto back = msrc::cli::parse(bytes, 4);
  EXPECT_EQ(back.q(), 9u);
  EXPECT_EQ(back.length, c.length);
  EXPECT_EQ(back.nodes, c.nodes);
  auto wrong = bytes;
  wrong[4] = 2;
  EXPECT_THROW(msrc::cli::parse_header(wrong), msrc::cli::FormatError);
  wrong = bytes;
  wrong[5] = 3;
  EXPECT_THROW(msrc::cli::parse_header(wrong), msrc::cli::FormatError);
  EXPECT_THROW(msrc::cli::parse(bytes, 5), msrc::cli::FormatError);
  EXPECT_THROW(msrc::cli::read_file("/nonexistent/x"), msrc::cli::IoError);
}

}  // namespace
