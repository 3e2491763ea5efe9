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

#include "collapsesim/optics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "collapsesim/errors.hpp"
#include "collapsesim/stats.hpp"
#include "test_util.hpp"

using namespace collapsesim;
using namespace collapsesim::optics;
using collapsesim::test_support::kPi;

namespace {

std::vector<double> deg(std::initializer_list<double> d) {
  std::vector<double> out;
  for (double x : d) out.push_back(degrees_to_radians(x));
  return out;
}

}  // namespace

TEST(Analytic, CrossedPolarizersBlockExactly) {
  const auto axes = deg({90, 0});
  const AnalyticCascade c = cascade_analytic(natural_light(), axes);
  ASSERT_EQ(c.stage_intensity.size(), 2u);
  EXPECT_EQ(c.stage_intensity[0], 0.5);
  EXPECT_EQ(c.stage_intensity[1], 0.0);
}

TEST(Analytic, ThreePolarizerCascade) {
  const AnalyticCascade c = cascade_analytic(natural_light(), deg({90, 45, 0}));
  EXPECT_EQ(c.stage_intensity[0], 0.5);
  EXPECT_NEAR(c.stage_intensity[1], 0.25, 1e-12);
  EXPECT_NEAR(c.stage_intensity[2], 0.125, 1e-12);
  const AnalyticCascade d = cascade_analytic(natural_light(), deg({0, 30, 60}));
  EXPECT_NEAR(d.stage_intensity[0], 0.5, 1e-12);
  EXPECT_NEAR(d.stage_intensity[1], 0.375, 1e-12);
  EXPECT_NEAR(d.stage_intensity[2], 0.28125, 1e-12);
}

TEST(Analytic, MalusLaw) {
  const LightBeam out = transmit_analytic(linearly_polarized(0.0), Polarizer(degrees_to_radians(20.0)));
  EXPECT_NEAR(out.intensity, 0.8830222215594890, 1e-12);
  EXPECT_NEAR(out.rho.expectation(ket_from_angle(degrees_to_radians(20.0))), 1.0, 1e-12);
  RngStream rng(1, 0);
  for (int i = 0; i < 500; ++i) {
    const double phi = test_support::random_angle(rng);
    const double theta = test_support::random_angle(rng);
    EXPECT_NEAR(transmit_analytic(linearly_polarized(phi), Polarizer(theta)).intensity, test_support::malus(phi, theta), 1e-12);
  }
}

TEST(Analytic, IntensityNonIncreasing) {
  RngStream rng(2, 0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> axes(1 + rng.uniform_below(6));
    for (double& a : axes) a = test_support::random_angle(rng);
    const AnalyticCascade c = cascade_analytic(natural_light(), axes);
    double prev = 1.0;
    for (double v : c.stage_intensity) {
      EXPECT_LE(v, prev + 1e-15);
      EXPECT_GE(v, 0.0);
      prev = v;
    }
  }
}

TEST(Analytic, MiddlePolarizerMaximumAtDiagonal) {
  double best = -1.0;
  double best_angle = -1.0;
  for (int d = 0; d <= 90; ++d) {
    const double v = cascade_analytic(natural_light(), deg({90, static_cast<double>(d), 0})).stage_intensity[2];
    if (v > best) {
      best = v;
      best_angle = d;
    }
  }
  EXPECT_EQ(best_angle, 45.0);
  EXPECT_NEAR(best, 0.125, 1e-12);
}

TEST(Analytic, SandwichFormula) {
  RngStream rng(3, 0);
  for (int i = 0; i < 200; ++i) {
    const double t = test_support::random_angle(rng);
    const double v = cascade_analytic(natural_light(), std::vector<double>{kPi / 2, t, 0.0}).stage_intensity[2];
    const double s = std::sin(2 * t);
    EXPECT_NEAR(v, s * s / 8, 1e-12);
  }
}

TEST(Analytic, RejectsEmptyCascade) {
  EXPECT_THROW(cascade_analytic(natural_light(), std::vector<double>{}), std::invalid_argument);
}

TEST(PhotonMc, AbsorbedPhotonCannotBeTransmitted) {
  RngStream rng(4, 0);
  PhotonRecord p(ket_from_angle(0.0));
  p = transmit_photon_mc(p, Polarizer(kPi / 2), rng);
  EXPECT_FALSE(p.alive);
  ASSERT_EQ(p.collapse_history.size(), 1u);
  EXPECT_EQ(p.collapse_history[0].outcome, Outcome::kOrthogonal);
  EXPECT_THROW(transmit_photon_mc(p, Polarizer(0.0), rng), ContractViolation);
}

TEST(PhotonMc, TransmittedStateIsAxis) {
  RngStream rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const double axis = test_support::random_angle(rng);
    PhotonRecord p = transmit_photon_mc(PhotonRecord(test_support::random_qubit(rng)), Polarizer(axis), rng);
    if (p.alive) EXPECT_TRUE(equal_up_to_phase(p.state, ket_from_angle(axis)));
  }
}

TEST(Source, Parse) {
  EXPECT_TRUE(Source::parse("natural").is_natural());
  const Source s = Source::parse("linear:30");
  EXPECT_FALSE(s.is_natural());
  EXPECT_NEAR(s.angle(), kPi / 6, 1e-15);
  EXPECT_THROW(Source::parse("linear:"), std::invalid_argument);
  EXPECT_THROW(Source::parse("laser"), std::invalid_argument);
  EXPECT_THROW(Source::parse("linear:abc"), std::invalid_argument);
}

TEST(CascadeMc, CrossedPolarizersBlockExactly) {
  const McCascade mc = cascade_mc(1'000'000, deg({90, 0}), Source::natural(), 42);
  EXPECT_EQ(mc.stage_counts[1], 0u);
  EXPECT_LE(std::abs(binomial_z(mc.stage_counts[0], mc.n_source, 0.5)), 4.0);
}

TEST(CascadeMc, AgreesWithAnalyticOnRandomCascades) {
  RngStream gen(6, 0);
  const std::uint64_t n = 100'000;
  for (int c = 0; c < 50; ++c) {
    std::vector<double> axes(1 + gen.uniform_below(4));
    for (double& a : axes) a = test_support::random_angle(gen);
    const bool natural = gen.uniform() < 0.5;
    const double src = test_support::random_angle(gen);
    const Source source = natural ? Source::natural() : Source::linear(src);
    const LightBeam beam = natural ? natural_light() : linearly_polarized(src);
    const AnalyticCascade an = cascade_analytic(beam, axes);
    const McCascade mc = cascade_mc(n, axes, source, 1000 + c);
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const double z = binomial_z(mc.stage_counts[k], n, an.stage_intensity[k]);
      if (std::isinf(z)) {
        ADD_FAILURE() << "count off a zero-width band at cascade " << c << " stage " << k;
      } else {
        EXPECT_LE(std::abs(z), 4.0) << "cascade " << c << " stage " << k;
      }
    }
  }
}

TEST(CascadeMc, NaturalSourceMatchesMixedState) {
  // Uniform random pure angles average to I/2: the first stage passes 1/2 for
  // every axis.
  for (double a : {0.0, 0.3, 1.2, 2.9}) {
    const McCascade mc = cascade_mc(200'000, std::vector<double>{a}, Source::natural(), 7);
    EXPECT_LE(std::abs(binomial_z(mc.stage_counts[0], mc.n_source, 0.5)), 4.0);
  }
}

TEST(CascadeMc, IndependentOfWorkerCount) {
  const auto axes = deg({90, 45, 0});
  const McCascade serial = cascade_mc(300'000, axes, Source::natural(), 9, Execution{1});
  const McCascade parallel = cascade_mc(300'000, axes, Source::natural(), 9, Execution{4});
  EXPECT_EQ(serial.stage_counts, parallel.stage_counts);
  const McCascade other = cascade_mc(300'000, axes, Source::natural(), 10, Execution{4});
  EXPECT_NE(serial.stage_counts, other.stage_counts);
}

TEST(CascadeMc, RejectsBadInput) {
  EXPECT_THROW(cascade_mc(0, deg({0}), Source::natural(), 1), std::invalid_argument);
  EXPECT_THROW(cascade_mc(10, std::vector<double>{}, Source::natural(), 1), std::invalid_argument);
}
