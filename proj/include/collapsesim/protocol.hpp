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

// The collapse-and-entanglement bit transmission scheme: Alice encodes each
// bit as the basis in which she measures her half of a singlet pair; Bob
// tries to recover it from his half alone.
//
// Receivers come in two families. Standard receivers only perform ordinary
// projective measurements on Bob's photon. The basis-oracle receiver reads the
// basis Bob's photon collapsed in directly; no quantum measurement provides
// that on a single copy, so its results are counterfactual and every report
// produced with it is flagged as such.

#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "collapsesim/measurement.hpp"
#include "collapsesim/parallel.hpp"
#include "collapsesim/stats.hpp"

namespace collapsesim::protocol {

struct EncodingRule {
  double basis_for_one = 0.0;
  double basis_for_zero = std::numbers::pi / 4;

  double basis_for(std::uint8_t bit) const { return bit ? basis_for_one : basis_for_zero; }
  /// True when the two bases differ as measurement bases (mod pi).
  bool distinct() const;
};

struct SentPhoton {
  Qubit bob_state;
  double hidden_basis_tag;  // canonical angle of the basis B collapsed in
  std::uint64_t pair_index;
};

class ReceiverStrategy {
 public:
  enum class Kind { kFixedBasisMl, kFixedBasisDirect, kBasisOracle, kRepetition };

  /// Measure in a fixed basis and pick the bit with the larger likelihood of
  /// the observed outcome under the singlet model; ties decode to 0.
  static ReceiverStrategy fixed_basis_ml(double angle);
  /// Measure in a fixed basis; aligned decodes to 1, orthogonal to 0.
  static ReceiverStrategy fixed_basis_direct(double angle);
  static ReceiverStrategy basis_oracle();
  /// k photons per bit, inner decisions combined by majority (ties -> 0).
  /// Throws std::invalid_argument for k == 0.
  static ReceiverStrategy repetition(std::uint32_t k, const ReceiverStrategy& inner);

  /// Parses "fixed-basis-ml:<deg>", "fixed-basis-direct:<deg>", "basis-oracle"
  /// or "repetition:<k>:<inner>". Throws std::invalid_argument naming the
  /// valid forms.
  static ReceiverStrategy parse(const std::string& spec);
  static const char* valid_forms();

  Kind kind() const { return kind_; }
  double basis() const { return basis_; }
  std::uint32_t k() const { return k_; }
  const ReceiverStrategy& inner() const { return *inner_; }

  std::uint64_t photons_per_bit() const;
  bool is_counterfactual() const;
  /// Canonical spec string, angles in degrees; parse(label()) round-trips.
  std::string label() const;

 private:
  ReceiverStrategy(Kind kind, double basis, std::uint32_t k, std::shared_ptr<const ReceiverStrategy> inner)
      : kind_(kind), basis_(basis), k_(k), inner_(std::move(inner)) {}

  Kind kind_;
  double basis_;
  std::uint32_t k_;
  std::shared_ptr<const ReceiverStrategy> inner_;
};

/// One fresh singlet per pair, pairs_per_bit pairs per bit. Alice measures A
/// in the bit's basis; each SentPhoton carries B's conditional state.
/// Throws std::invalid_argument for empty bits or pairs_per_bit == 0.
std::vector<SentPhoton> encode(std::span<const std::uint8_t> bits, const EncodingRule& rule, RngStream& rng,
                               std::uint64_t pairs_per_bit = 1, std::uint64_t first_pair_index = 0);

struct ReceiveResult {
  Bits bits;
  std::uint64_t ties = 0;                // ML likelihood ties and majority-vote ties, all decoded as 0
  std::vector<std::int8_t> raw_outcomes;  // per photon: measured outcome, or -1 if never measured
};

/// Throws std::invalid_argument when the photon count is not a multiple of
/// strategy.photons_per_bit().
ReceiveResult receive(std::span<const SentPhoton> photons, const ReceiverStrategy& strategy,
                      const EncodingRule& rule, RngStream& rng);

/// P(outcome | bit) for a measurement of Bob's photon in basis, computed from
/// the singlet model and the rule.
std::array<double, 2> outcome_likelihoods(const EncodingRule& rule, const MeasurementBasis& basis, std::uint8_t bit);

struct MutualInformationEstimate {
  double mi_bits = 0.0;
  Interval ci95;
  double std_err = 0.0;
  double null_q95 = 0.0;  // 95th percentile of the label-shuffled MI
  double p_value = 1.0;
  std::uint64_t n_shuffles = 0;
};

/// Plug-in I(sent; decoded). The 95% interval is
///   [mi - 1.96 se - q95_null, mi + 1.96 se]  clipped to [0, 1],
/// where se is the delta-method standard error and q95_null the permutation
/// 95th percentile, which bounds the upward bias of the plug-in estimate. Under
/// independence mi <= q95_null with probability 0.95, so the interval reaches 0.
/// Throws std::invalid_argument for empty or unequal-length input.
MutualInformationEstimate mutual_information(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> decoded,
                                             std::uint64_t n_shuffles = 1000, std::uint64_t seed = 0,
                                             const Execution& exec = {});

/// n bits with exactly floor(n/2) ones in uniformly shuffled order.
Bits balanced_bits(std::uint64_t n, RngStream& rng);

struct TransmissionReport {
  std::uint64_t n_bits = 0;
  std::uint64_t pairs_per_bit = 1;
  double ber = 0.0;
  MutualInformationEstimate mi;
  std::uint64_t ties = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::string strategy;
  bool counterfactual = false;
  EncodingRule rule;
  // raw_counts[bit][outcome] over photons that were measured.
  std::array<std::array<std::uint64_t, 2>, 2> raw_counts{};
  // Two-proportion z of P(outcome 0 | bit 0) vs P(outcome 0 | bit 1).
  double raw_outcome_z = 0.0;
};

inline constexpr std::uint64_t kProtocolBlockBits = 4096;

/// Balanced random bits -> encode -> receive -> mutual information. Bits are
/// drawn from RngStream(seed, kProtocolBits|0); bit block b is encoded with
/// (seed, kProtocolEncode|b) and received with (seed, kProtocolReceive|b).
TransmissionReport run_protocol(std::uint64_t n_bits, const EncodingRule& rule, const ReceiverStrategy& strategy,
                                std::uint64_t seed, const Execution& exec = {}, std::uint64_t n_shuffles = 1000);

}  // namespace collapsesim::protocol
