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

#include "collapsesim/measurement.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "collapsesim/errors.hpp"
#include "collapsesim/stats.hpp"
#include "test_util.hpp"

using namespace collapsesim;
using collapsesim::test_support::kPi;

TEST(KetFromAngle, AxisAndDiagonal) {
  const Qubit x = ket_from_angle(0.0);
  EXPECT_EQ(x[0], Complex(1.0));
  EXPECT_EQ(x[1], Complex(0.0));
  const Qubit y = ket_from_angle(kPi / 2);
  EXPECT_EQ(y[0], Complex(0.0));
  EXPECT_EQ(y[1], Complex(1.0));
  const Qubit d = ket_from_angle(kPi / 4);
  EXPECT_NEAR(d[0].real(), 0.7071067811865475244, 1e-15);
  EXPECT_NEAR(d[1].real(), 0.7071067811865475244, 1e-15);
  EXPECT_THROW(ket_from_angle(INFINITY), std::invalid_argument);
  EXPECT_THROW(ket_from_angle(NAN), std::invalid_argument);
}

TEST(KetFromAngle, HalfTurnIsGlobalSign) {
  RngStream rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const double t = 4 * kPi * rng.uniform() - 2 * kPi;
    EXPECT_TRUE(equal_up_to_phase(ket_from_angle(t), ket_from_angle(t + kPi), 1e-12));
    EXPECT_NEAR(ket_from_angle(t).norm_squared(), 1.0, 1e-12);
  }
}

TEST(CanonicalAngle, ReducesModPi) {
  EXPECT_EQ(canonical_angle(0.0), 0.0);
  EXPECT_EQ(canonical_angle(-0.0), 0.0);
  EXPECT_FALSE(std::signbit(canonical_angle(-0.0)));
  EXPECT_EQ(canonical_angle(kPi), 0.0);
  EXPECT_EQ(canonical_angle(-kPi / 2), kPi / 2);
  EXPECT_NEAR(canonical_angle(3 * kPi / 4 + 2 * kPi), 3 * kPi / 4, 1e-14);
  EXPECT_LT(canonical_angle(-1e-300), kPi);
  EXPECT_EQ(degrees_to_radians(90.0), kPi / 2);
  EXPECT_EQ(degrees_to_radians(45.0), kPi / 4);
  EXPECT_NEAR(radians_to_degrees(degrees_to_radians(37.5)), 37.5, 1e-12);
}

TEST(MeasurementBasis, EigenvectorsOrthonormal) {
  RngStream rng(2, 0);
  for (int i = 0; i < 200; ++i) {
    const MeasurementBasis b(10 * rng.uniform() - 5);
    EXPECT_GE(b.angle(), 0.0);
    EXPECT_LT(b.angle(), kPi);
    EXPECT_NEAR(std::abs(inner(b.aligned(), b.orthogonal())), 0.0, 1e-12);
    EXPECT_NEAR(b.aligned().norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(b.orthogonal().norm_squared(), 1.0, 1e-12);
  }
}

TEST(Born, Examples) {
  const auto a = born_probabilities(Qubit({1.0, 0.0}), MeasurementBasis(0.0));
  EXPECT_EQ(a.p0, 1.0);
  EXPECT_EQ(a.p1, 0.0);
  const double h = std::sqrt(0.5);
  const auto b = born_probabilities(Qubit({h, h}), MeasurementBasis(0.0));
  EXPECT_NEAR(b.p0, 0.5, 1e-15);
  EXPECT_NEAR(b.p1, 0.5, 1e-15);
  const auto c = born_probabilities(Qubit({1.0, 0.0}), MeasurementBasis(kPi / 6));
  EXPECT_NEAR(c.p0, 0.75, 1e-15);
  EXPECT_NEAR(c.p1, 0.25, 1e-15);
}

TEST(Born, RejectsUnnormalizedState) {
  EXPECT_THROW(born_probabilities(Qubit({1.0, 0.1}), MeasurementBasis(0.0)), ContractViolation);
  EXPECT_NO_THROW(born_probabilities(Qubit({1.0 + 1e-12, 0.0}), MeasurementBasis(0.0)));
}

TEST(Born, CompletenessAndMalus) {
  RngStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const Qubit s = test_support::random_qubit(rng);
    const MeasurementBasis b(test_support::random_angle(rng));
    const auto p = born_probabilities(s, b);
    EXPECT_NEAR(p.p0 + p.p1, 1.0, 1e-12);
    const double phi = test_support::random_angle(rng);
    const double theta = test_support::random_angle(rng);
    EXPECT_NEAR(born_probabilities(ket_from_angle(phi), MeasurementBasis(theta)).p0, test_support::malus(phi, theta), 1e-12);
  }
}

TEST(Born, BasisPeriodicity) {
  RngStream rng(4, 0);
  for (int i = 0; i < 500; ++i) {
    const Qubit s = test_support::random_qubit(rng);
    const double t = test_support::random_angle(rng);
    // Canonicalization is exact on the canonical representative...
    const auto p = born_probabilities(s, MeasurementBasis(t));
    const auto q = born_probabilities(s, MeasurementBasis(canonical_angle(t)));
    EXPECT_EQ(p.p0, q.p0);
    EXPECT_EQ(p.p1, q.p1);
    // ...and t + pi only differs by the rounding of the sum itself.
    const auto r = born_probabilities(s, MeasurementBasis(t + kPi));
    EXPECT_NEAR(p.p0, r.p0, 1e-12);
  }
  const Qubit s = test_support::random_qubit(rng);
  EXPECT_EQ(born_probabilities(s, MeasurementBasis(kPi / 2)).p0, born_probabilities(s, MeasurementBasis(-kPi / 2)).p0);
}

TEST(Collapse, ProbabilityOneBranches) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngStream rng(seed, 0);
    const auto r0 = collapse(Qubit({1.0, 0.0}), MeasurementBasis(0.0), rng);
    EXPECT_EQ(r0.outcome, Outcome::kAligned);
    EXPECT_TRUE(equal_up_to_phase(r0.post_state, Qubit({1.0, 0.0})));
    EXPECT_EQ(r0.probability, 1.0);
    const auto r1 = collapse(Qubit({0.0, 1.0}), MeasurementBasis(0.0), rng);
    EXPECT_EQ(r1.outcome, Outcome::kOrthogonal);
    EXPECT_TRUE(equal_up_to_phase(r1.post_state, Qubit({0.0, 1.0})));
  }
}

TEST(Collapse, DeterministicGivenStream) {
  const Qubit s = Qubit::normalized({0.3, Complex(0.2, 0.9)});
  RngStream a(77, 5), b(77, 5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(collapse(s, MeasurementBasis(0.4), a).outcome, collapse(s, MeasurementBasis(0.4), b).outcome);
  }
}

TEST(Collapse, Idempotent) {
  RngStream rng(6, 0);
  for (int i = 0; i < 1000; ++i) {
    const MeasurementBasis b(test_support::random_angle(rng));
    const auto first = collapse(test_support::random_qubit(rng), b, rng);
    for (int k = 0; k < 5; ++k) {
      const auto again = collapse(first.post_state, b, rng);
      EXPECT_EQ(again.outcome, first.outcome);
    }
  }
}

TEST(Collapse, EqualSuperpositionFrequency) {
  RngStream rng(7, 0);
  const double h = std::sqrt(0.5);
  const Qubit s({h, h});
  const MeasurementBasis b(0.0);
  const std::uint64_t n = 1'000'000;
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < n; ++i) zeros += collapse(s, b, rng).outcome == Outcome::kAligned;
  EXPECT_LE(std::abs(binomial_z(zeros, n, 0.5)), 3.0);
}

TEST(Collapse, MonteCarloConvergesToBorn) {
  RngStream gen(8, 0);
  int within = 0;
  for (int c = 0; c < 100; ++c) {
    const Qubit s = test_support::random_qubit(gen);
    const MeasurementBasis b(test_support::random_angle(gen));
    const double p0 = born_probabilities(s, b).p0;
    RngStream rng(8, static_cast<std::uint64_t>(c) + 1);
    const std::uint64_t n = 1'000'000;
    std::uint64_t zeros = 0;
    for (std::uint64_t i = 0; i < n; ++i) zeros += collapse(s, b, rng).outcome == Outcome::kAligned;
    within += std::abs(binomial_z(zeros, n, p0)) <= 3.0;
  }
  EXPECT_GE(within, 99);
}

TEST(SampleCategorical, NeverPicksZeroProbability) {
  const double p[4] = {0.0, 0.5, 0.5, 0.0};
  for (double u : {0.0, 0.25, 0.4999999, 0.5, 0.9999999999999999}) {
    const auto k = sample_categorical(p, u);
    EXPECT_TRUE(k == 1 || k == 2);
  }
  const double q[2] = {1.0 - 1e-16, 0.0};
  EXPECT_EQ(sample_categorical(q, 0.9999999999999999), 0u);
  const double none[2] = {0.0, 0.0};
  EXPECT_THROW(sample_categorical(none, 0.5), std::invalid_argument);
}
