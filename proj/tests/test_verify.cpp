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

#include "msrc/verify.hpp"

namespace {

using msrc::c1::C1Code;
using msrc::c2::C2Code;
using msrc::verify::VerifyOptions;

TEST(Verify, CleanCodes) {
  const auto a = msrc::verify::verify_c1(C1Code(msrc::c1::c1_params(6, 3, 4)));
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.summary(), "20/20 subsets, 30/30 repairs");
  EXPECT_EQ(a.factorization.failed, 0u);
  EXPECT_GT(a.factorization.checked, 0u);
  EXPECT_EQ(a.self_identity.checked, 6u * 3);
  EXPECT_GT(a.structure.checked, 0u);

  const auto b = msrc::verify::verify_c1(C1Code(msrc::c1::c1_params(6, 3, 5)));
  EXPECT_EQ(b.summary(), "20/20 subsets, 6/6 repairs");

  const auto s = msrc::verify::verify_shortened(msrc::codec::shorten(C1Code(msrc::c1::c1_params(6, 4, 5))));
  EXPECT_TRUE(s.ok());
  EXPECT_EQ(s.summary(), "10/10 subsets, 5/5 repairs");

  const auto c = msrc::verify::verify_c2(C2Code(msrc::c2::c2_params(4, 2, 2)));
  EXPECT_TRUE(c.ok());
  EXPECT_EQ(c.summary(), "28/28 subsets, 8/8 repairs");
}

TEST(Verify, SamplingIsReported) {
  VerifyOptions o;
  o.repair_cap = 7;
  o.mds.exhaustive_cap = 4;
  const auto r = msrc::verify::verify_c1(C1Code(msrc::c1::c1_params(6, 3, 4)), o);
  EXPECT_EQ(r.repair_total, 30u);
  EXPECT_EQ(r.repairs.checked, 7u);
  EXPECT_EQ(r.mds.checked, 4u);
  EXPECT_NE(r.summary().find("sampled"), std::string::npos) << r.summary();
  EXPECT_TRUE(r.ok());
}

TEST(Verify, DeterministicAcrossThreadCounts) {
  const auto p = msrc::c1::c1_params(8, 4, 5);
  auto table = msrc::c1::assign_lambdas(p);
  table.set(1, 1, table.at(1, 0));
  const C1Code code(p, table);
  VerifyOptions one;
  one.threads = 1;
  VerifyOptions many;
  many.threads = 4;
  const auto a = msrc::verify::verify_c1(code, one);
  const auto b = msrc::verify::verify_c1(code, many);
  EXPECT_FALSE(a.ok());
  EXPECT_EQ(a.summary(), b.summary());
  EXPECT_EQ(a.witnesses, b.witnesses);
  EXPECT_EQ(a.mds.failures, b.mds.failures);
}

TEST(Verify, NegativeControlsLeaveWitnesses) {
  const auto p = msrc::c1::c1_params(6, 3, 4);
  auto paired = msrc::c1::assign_lambdas(p);
  paired.set(3, 0, paired.at(0, 0));
  const auto t1 = msrc::verify::verify_c1(C1Code(p, paired));
  EXPECT_FALSE(t1.ok());
  EXPECT_FALSE(t1.mds.failures.empty());
  EXPECT_FALSE(t1.witnesses.empty());

  auto within = msrc::c1::assign_lambdas(p);
  within.set(0, 1, within.at(0, 0));
  const auto t2 = msrc::verify::verify_c1(C1Code(p, within));
  EXPECT_FALSE(t2.ok());
  EXPECT_GT(t2.repairs.failed, 0u);

  msrc::c2::ParamsOptions o;
  o.q = 8;
  o.enforce_field_threshold = false;
  const auto c = msrc::verify::verify_c2(C2Code(msrc::c2::c2_params(4, 2, 2, o)));
  EXPECT_GT(c.lambda_violations, 0u);
  EXPECT_FALSE(c.ok());
}

}  // namespace
