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

#include "collapsesim/entangle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "collapsesim/errors.hpp"
#include "collapsesim/stats.hpp"
#include "test_util.hpp"

using namespace collapsesim;
using namespace collapsesim::entangle;
using collapsesim::test_support::kPi;

TEST(Pair, SingletAmplitudes) {
  const PairState p = make_pair();
  const double h = std::sqrt(0.5);
  EXPECT_EQ(p.joint[0], Complex(0.0));
  EXPECT_NEAR(p.joint[1].real(), h, 1e-16);
  EXPECT_NEAR(p.joint[2].real(), -h, 1e-16);
  EXPECT_EQ(p.joint[3], Complex(0.0));
  EXPECT_EQ(parse_pair_kind("singlet"), PairKind::kSinglet);
  EXPECT_EQ(parse_pair_kind("psi-plus"), PairKind::kPsiPlus);
  EXPECT_EQ(to_string(PairKind::kPsiPlus), "psi-plus");
  EXPECT_THROW(parse_pair_kind("bell"), std::invalid_argument);
}

TEST(JointProbabilities, MatchClosedForm) {
  RngStream rng(1, 0);
  for (int i = 0; i < 500; ++i) {
    const double ta = test_support::random_angle(rng);
    const double tb = test_support::random_angle(rng);
    const auto p = joint_probabilities(make_pair(), MeasurementBasis(ta), MeasurementBasis(tb));
    const auto q = test_support::singlet_joint_oracle(ta, tb);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], q[k], 1e-12);
    EXPECT_NEAR(analytic_correlation(make_pair(), ta, tb), -std::cos(2 * (ta - tb)), 1e-12);
  }
}

TEST(Singlet, EqualBasesAlwaysDiffer) {
  RngStream rng(2, 0);
  for (int i = 0; i < 10'000; ++i) {
    const MeasurementBasis b(test_support::random_angle(rng));
    const JointOutcome o = measure_pair(make_pair(), b, b, rng);
    EXPECT_NE(o.outcome_a, o.outcome_b);
  }
}

TEST(Singlet, EqualOutcomeProbabilityAtEighthTurn) {
  const auto p = joint_probabilities(make_pair(), MeasurementBasis(0.0), MeasurementBasis(kPi / 8));
  EXPECT_NEAR(p[0] + p[3], 0.14644660940672624, 1e-12);
  EXPECT_NEAR(analytic_correlation(make_pair(), 0.0, kPi / 8), -0.7071067811865476, 1e-12);
}

TEST(Singlet, CorrelationMonteCarlo) {
  const CorrelationStats c = correlation(0.0, kPi / 8, 1'000'000, 11);
  EXPECT_EQ(c.n, 1'000'000u);
  EXPECT_LE(std::abs(c.e_value + 0.7071067811865476), 4 * c.std_err);
  const double expected_se = std::sqrt((1 - 0.5) / 1e6);
  EXPECT_NEAR(c.std_err, expected_se, 0.05 * expected_se);
}

TEST(Singlet, CorrelationIndependentOfWorkers) {
  const CorrelationStats a = correlation(0.2, 1.1, 300'000, 5, Execution{1});
  const CorrelationStats b = correlation(0.2, 1.1, 300'000, 5, Execution{4});
  EXPECT_EQ(a.e_value, b.e_value);
}

TEST(Chsh, AnalyticTsirelson) {
  EXPECT_NEAR(analytic_chsh(make_pair(), standard_chsh_settings()), 2.8284271247461903, 1e-12);
}

TEST(Chsh, MonteCarloViolatesClassicalBound) {
  const ChshResult r = chsh(standard_chsh_settings(), 1'000'000, 3);
  EXPECT_LE(std::abs(r.s - 2.8284271247461903), 4 * r.std_err);
  EXPECT_GT(r.s - 2.0, 10 * r.std_err);
}

TEST(Chsh, ProductStatesRespectClassicalBound) {
  RngStream rng(4, 0);
  for (int i = 0; i < 500; ++i) {
    const PairState p = product_pair(test_support::random_qubit(rng), test_support::random_qubit(rng));
    ChshSettings s{test_support::random_angle(rng), test_support::random_angle(rng), test_support::random_angle(rng),
                   test_support::random_angle(rng)};
    EXPECT_LE(analytic_chsh(p, s), 2.0 + 1e-12);
    EXPECT_LE(analytic_chsh(p, standard_chsh_settings()), 2.0 + 1e-12);
  }
}

TEST(Pair, SequentialMatchesJoint) {
  RngStream rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const MeasurementBasis ba(test_support::random_angle(rng));
    const MeasurementBasis bb(test_support::random_angle(rng));
    const auto joint = joint_probabilities(make_pair(), ba, bb);
    for (Outcome a : {Outcome::kAligned, Outcome::kOrthogonal}) {
      const double pa = probability_a(make_pair(), ba, a);
      const Qubit sb = conditional_state_b(make_pair(), ba, a);
      const auto pb = born_probabilities(sb, bb);
      EXPECT_NEAR(pa * pb.p0, joint[2 * index_of(a)], 1e-12);
      EXPECT_NEAR(pa * pb.p1, joint[2 * index_of(a) + 1], 1e-12);
    }
  }
}

TEST(Pair, ConditionalStateOnImpossibleBranch) {
  const PairState p = product_pair(Qubit({1.0, 0.0}), Qubit({0.0, 1.0}));
  EXPECT_THROW(conditional_state_b(p, MeasurementBasis(0.0), Outcome::kOrthogonal), ContractViolation);
}

TEST(Pair, MeasureAliceLeavesBobOrthogonal) {
  RngStream rng(6, 0);
  for (int i = 0; i < 500; ++i) {
    const MeasurementBasis b(test_support::random_angle(rng));
    const AliceMeasurement m = measure_A(make_pair(), b, rng);
    EXPECT_NEAR(std::norm(inner(m.a.post_state, m.state_b)), 0.0, 1e-12);
  }
}

TEST(NoSignaling, BobMarginalIndependentOfAliceBasis) {
  std::vector<double> bases;
  RngStream rng(7, 0);
  for (int i = 0; i < 64; ++i) bases.push_back(4 * kPi * rng.uniform() - 2 * kPi);
  EXPECT_LE(no_signaling_check(bases), 1e-12);
  EXPECT_LE(no_signaling_check(bases, make_pair(PairKind::kPsiPlus)), 1e-12);
  const Density2 rb = bob_unconditional_state(make_pair(), MeasurementBasis(0.7));
  EXPECT_LE(trace_distance(rb, Density2::maximally_mixed()), 1e-12);
  EXPECT_THROW(no_signaling_check(std::vector<double>{}), std::invalid_argument);
}

TEST(Singlet, RotationInvariant) {
  RngStream rng(8, 0);
  for (int i = 0; i < 200; ++i) {
    const double ta = test_support::random_angle(rng);
    const double tb = test_support::random_angle(rng);
    const double r = 10 * rng.uniform() - 5;
    const auto p = joint_probabilities(make_pair(), MeasurementBasis(ta), MeasurementBasis(tb));
    const auto q = joint_probabilities(make_pair(), MeasurementBasis(ta + r), MeasurementBasis(tb + r));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], q[k], 1e-12);
  }
}
