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

#include "collapsesim/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace collapsesim;

// Reference values below were evaluated with 30-digit arithmetic (mpmath).

TEST(Wilson, MatchesHighPrecisionReference) {
  const Interval ci = wilson_interval(500, 1000);
  EXPECT_NEAR(ci.lo, 0.4690696003681041807, 1e-12);
  EXPECT_NEAR(ci.hi, 0.5309303996318958193, 1e-12);

  const Interval skew = wilson_interval(37, 120);
  EXPECT_NEAR(skew.lo, 0.2327273698891629227, 1e-12);
  EXPECT_NEAR(skew.hi, 0.3958299772380067472, 1e-12);
}

TEST(Wilson, Boundaries) {
  const Interval none = wilson_interval(0, 10);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_NEAR(none.hi, 0.2775327998628892527, 1e-12);
  const Interval all = wilson_interval(10, 10);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_NEAR(all.lo, 0.7224672001371107473, 1e-12);
}

TEST(Wilson, RejectsBadInput) {
  EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(5, 4), std::invalid_argument);
  EXPECT_THROW(wilson_interval(1, 4, 1.0), std::invalid_argument);
}

TEST(Wilson, ContainsPointEstimate) {
  for (std::uint64_t n : {1u, 2u, 7u, 100u, 12345u}) {
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 13)) {
      const BinomialEstimate e = BinomialEstimate::from_counts(k, n);
      EXPECT_LE(e.ci95.lo, e.point);
      EXPECT_GE(e.ci95.hi, e.point);
    }
  }
}

TEST(Binomial, ZScores) {
  EXPECT_DOUBLE_EQ(binomial_sigma(0.5, 1'000'000), 0.0005);
  EXPECT_EQ(binomial_z(500, 1000, 0.5), 0.0);
  EXPECT_EQ(binomial_z(0, 1000, 0.0), 0.0);
  EXPECT_TRUE(std::isinf(binomial_z(1, 1000, 0.0)));
  EXPECT_NEAR(binomial_z(530, 1000, 0.5), 0.03 / std::sqrt(0.25 / 1000), 1e-12);
  EXPECT_EQ(two_proportion_z(10, 100, 20, 200), 0.0);
}

TEST(MutualInformation, PluginMatchesReference) {
  EXPECT_NEAR(plugin_mutual_information({{40, 10, 10, 40}}), 0.2780719051126376521, 1e-12);
  EXPECT_NEAR(plugin_mutual_information({{30, 20, 5, 45}}), 0.2140949613535160759, 1e-12);
  EXPECT_EQ(plugin_mutual_information({{50, 0, 0, 50}}), 1.0);
  EXPECT_EQ(plugin_mutual_information({{25, 25, 25, 25}}), 0.0);
  EXPECT_EQ(plugin_mutual_information({{0, 60, 0, 40}}), 0.0);
}

TEST(MutualInformation, ContingencyCountsPairs) {
  const Bits x = {0, 0, 1, 1, 1};
  const Bits y = {0, 1, 0, 1, 1};
  const Contingency t = contingency(x, y);
  EXPECT_EQ(t.counts, (std::array<std::uint64_t, 4>{1, 1, 1, 2}));
  EXPECT_EQ(t.x_ones(), 3u);
  EXPECT_EQ(t.y_ones(), 3u);
  EXPECT_THROW(contingency(x, Bits{0}), std::invalid_argument);
}

TEST(MutualInformation, StderrVanishesForDeterministicBijection) {
  EXPECT_EQ(mutual_information_stderr({{50, 0, 0, 50}}), 0.0);
  EXPECT_GT(mutual_information_stderr({{40, 10, 10, 40}}), 0.0);
}

namespace {

Bits fair_bits(std::size_t n, RngStream& rng) {
  Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng.next_u32() & 1u);
  return b;
}

}  // namespace

TEST(Permutation, PerfectDependenceIsSignificant) {
  RngStream rng(11, 0);
  const Bits x = fair_bits(10000, rng);
  EXPECT_LE(permutation_independence_test(x, x, 1000, rng), 0.001);
}

TEST(Permutation, ConstantSideGivesPValueOne) {
  RngStream rng(12, 0);
  const Bits x = fair_bits(1000, rng);
  const Bits y(1000, 1);
  const PermutationNull null = permutation_null(x, y, 1000, 3);
  EXPECT_EQ(null.observed, 0.0);
  EXPECT_EQ(null.p_value, 1.0);
  EXPECT_EQ(permutation_independence_test(x, y, 1000, rng), 1.0);
}

TEST(Permutation, IndependentStreamsRarelyRejected) {
  RngStream rng(13, 0);
  int above = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Bits x = fair_bits(1000, rng);
    const Bits y = fair_bits(1000, rng);
    above += permutation_independence_test(x, y, 1000, rng) > 0.05;
  }
  EXPECT_GE(above, 90);
}

TEST(Permutation, RejectsBadInput) {
  RngStream rng(14, 0);
  const Bits x(10, 0);
  EXPECT_THROW(permutation_independence_test(x, Bits(9, 0), 1000, rng), std::invalid_argument);
  EXPECT_THROW(permutation_independence_test(x, x, 999, rng), std::invalid_argument);
}

TEST(Permutation, ParallelDriverMatchesSerialReference) {
  RngStream rng(15, 0);
  const Bits x = fair_bits(5000, rng);
  const Bits y = fair_bits(5000, rng);
  const PermutationNull serial = permutation_null(x, y, 1000, 99, Execution{1});
  const PermutationNull parallel = permutation_null(x, y, 1000, 99, Execution{4});
  EXPECT_EQ(serial.null_mi, parallel.null_mi);
  EXPECT_EQ(serial.p_value, parallel.p_value);
}

TEST(Quantile, Interpolates) {
  EXPECT_EQ(quantile({3.0, 1.0, 2.0}, 0.5), 2.0);
  EXPECT_EQ(quantile({0.0, 10.0}, 0.25), 2.5);
  EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
}
