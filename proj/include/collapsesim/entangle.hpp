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

#pragma once

// Polarization-entangled photon pairs: sources, one-sided and joint
// measurement, correlation statistics and the analytic no-signaling check.

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "collapsesim/linalg.hpp"
#include "collapsesim/measurement.hpp"
#include "collapsesim/parallel.hpp"

namespace collapsesim::entangle {

/// Joint two-photon state, amplitudes ordered |00>, |01>, |10>, |11> with
/// photon A as the first factor.
struct PairState {
  TwoQubit joint;
};

enum class PairKind { kSinglet, kPsiPlus };

/// Singlet (|01> - |10>)/sqrt2: orthogonal polarizations in every basis.
PairState make_pair();
PairState make_pair(PairKind kind);
/// Parses "singlet" or "psi-plus".
PairKind parse_pair_kind(const std::string& name);
std::string to_string(PairKind kind);

/// Uncorrelated product a (x) b, for comparison against entangled sources.
PairState product_pair(const Qubit& a, const Qubit& b);

/// P(A = outcome) when A alone is measured in basis_a.
double probability_a(const PairState& pair, const MeasurementBasis& basis_a, Outcome outcome);

/// B's normalized state given A's outcome in basis_a. Throws ContractViolation
/// when that branch has probability below 1e-12.
Qubit conditional_state_b(const PairState& pair, const MeasurementBasis& basis_a, Outcome outcome);

struct AliceMeasurement {
  OutcomeRecord a;
  Qubit state_b;
};

/// Measures A only; B is left in its conditional state.
AliceMeasurement measure_A(const PairState& pair, const MeasurementBasis& basis_a, RngStream& rng);

struct JointOutcome {
  Outcome outcome_a;
  Outcome outcome_b;
  MeasurementBasis basis_a;
  MeasurementBasis basis_b;
};

/// Born probabilities of the four joint outcomes, indexed 2*a + b.
std::array<double, 4> joint_probabilities(const PairState& pair, const MeasurementBasis& basis_a,
                                          const MeasurementBasis& basis_b);

JointOutcome measure_pair(const PairState& pair, const MeasurementBasis& basis_a,
                          const MeasurementBasis& basis_b, RngStream& rng);

/// E = P(equal) - P(differ) from the joint Born distribution.
double analytic_correlation(const PairState& pair, double theta_a, double theta_b);

struct CorrelationStats {
  double e_value = 0.0;
  std::uint64_t n = 0;
  double std_err = 0.0;
};

/// Monte Carlo estimate of E over n joint measurements. Block b of trials
/// uses RngStream(seed, domain|b).
CorrelationStats correlation(const PairState& pair, double theta_a, double theta_b, std::uint64_t n,
                             std::uint64_t seed, const Execution& exec = {},
                             StreamDomain domain = StreamDomain::kCorrelation);
CorrelationStats correlation(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed,
                             const Execution& exec = {});

struct ChshSettings {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
};

/// Angles at which the singlet reaches 2 sqrt2: 0, pi/4, pi/8, 3pi/8.
ChshSettings standard_chsh_settings();

struct ChshResult {
  double s = 0.0;
  double std_err = 0.0;
  std::array<CorrelationStats, 4> terms;  // E(a,b), E(a,b'), E(a',b), E(a',b')
};

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.
ChshResult chsh(const PairState& pair, const ChshSettings& settings, std::uint64_t n_per_setting,
                std::uint64_t seed, const Execution& exec = {});
ChshResult chsh(const ChshSettings& settings, std::uint64_t n_per_setting, std::uint64_t seed,
                const Execution& exec = {});
double analytic_chsh(const PairState& pair, const ChshSettings& settings);

/// B's state averaged over A's outcomes after A is measured in basis_a
/// (probability-weighted mixture of the conditional states).
Density2 bob_unconditional_state(const PairState& pair, const MeasurementBasis& basis_a);

/// Largest pairwise trace distance between bob_unconditional_state over the
/// given Alice bases. Throws std::invalid_argument for an empty list.
double no_signaling_check(std::span<const double> bases_a, const PairState& pair = make_pair());

}  // namespace collapsesim::entangle
