// Copyright 2026 The collapsesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "collapsesim/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace collapsesim;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RngStream, SameSeedAndIndexGiveSameSequence) {
  RngStream a = stream_from_seed(42, 0);
  RngStream b = stream_from_seed(42, 0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DistinctIndicesDiffer) {
  RngStream a = stream_from_seed(42, 0);
  RngStream b = stream_from_seed(42, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += a.next_u64() == b.next_u64();
  EXPECT_EQ(equal, 0);
}

TEST(RngStream, FirstWordsComeFromBlockZero) {
  RngStream s(7, 3);
  const auto block = philox4x32_10({0, 0, 3, 0}, {7, 0});
  EXPECT_EQ(s.next_u32(), block[0]);
  EXPECT_EQ(s.next_u32(), block[1]);
  EXPECT_EQ(s.next_u64(), (std::uint64_t{block[2]} << 32) | block[3]);
  EXPECT_EQ(s.algorithm(), "philox4x32-10");
}

TEST(RngStream, UniformMeanWithinFourSigma) {
  RngStream s = stream_from_seed(42, 0);
  const int n = 1'000'000;
  double sum = 0.0;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  const double sigma = std::sqrt(1.0 / 12.0 / n);
  EXPECT_LE(std::abs(sum / n - 0.5), 4 * sigma);
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(RngStream, UniformBelowStaysInRange) {
  RngStream s(5, 0);
  std::array<int, 7> hist{};
  for (int i = 0; i < 70000; ++i) {
    const auto v = s.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (int c : hist) EXPECT_NEAR(c, 10000, 4 * std::sqrt(10000 * 6.0 / 7.0));
  EXPECT_THROW(s.uniform_below(0), std::invalid_argument);
}

TEST(RngStream, StreamsDoNotShareOutputs) {
  std::vector<std::uint64_t> all;
  all.reserve(64 * 10000);
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    RngStream s(20260917, idx);
    for (int i = 0; i < 10000; ++i) all.push_back(s.next_u64());
  }
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
}

TEST(RngStream, DomainsPartitionIndexSpace) {
  EXPECT_NE(domain_stream(StreamDomain::kCascade, 0), domain_stream(StreamDomain::kCorrelation, 0));
  EXPECT_EQ(domain_stream(StreamDomain::kChsh, 2, 5), domain_stream(static_cast<StreamDomain>(5), 5));
  EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
  EXPECT_EQ(derive_seed(9, 1), derive_seed(9, 1));
}
