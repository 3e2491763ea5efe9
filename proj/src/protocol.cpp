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

#include "collapsesim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "collapsesim/entangle.hpp"

namespace collapsesim::protocol {
namespace {

constexpr double kAngleTol = 1e-12;
constexpr double kTieTol = 1e-12;

bool same_basis(double a, double b) {
  const double d = std::abs(canonical_angle(a) - canonical_angle(b));
  return d <= kAngleTol || std::numbers::pi - d <= kAngleTol;
}

double parse_degrees(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double deg = 0.0;
  try {
    deg = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(deg)) {
    throw std::invalid_argument("invalid receiver strategy '" + spec + "': bad angle '" + text +
                                "'; valid forms: " + ReceiverStrategy::valid_forms());
  }
  return degrees_to_radians(deg);
}

std::string format_degrees(double rad) {
  std::ostringstream os;
  os.precision(10);
  os << radians_to_degrees(rad);
  return os.str();
}

const ReceiverStrategy& leaf_of(const ReceiverStrategy& s) {
  return s.kind() == ReceiverStrategy::Kind::kRepetition ? leaf_of(s.inner()) : s;
}

struct Decoder {
  const EncodingRule& rule;
  RngStream& rng;
  ReceiveResult& out;
  std::array<std::array<double, 2>, 2> likelihood{};  // [bit][outcome]

  std::uint8_t decode(std::span<const SentPhoton> group, const ReceiverStrategy& s) {
    switch (s.kind()) {
      case ReceiverStrategy::Kind::kBasisOracle:
        out.raw_outcomes.push_back(-1);
        return same_basis(group.front().hidden_basis_tag, rule.basis_for_one) ? 1 : 0;
      case ReceiverStrategy::Kind::kFixedBasisDirect: {
        const Outcome o = collapse(group.front().bob_state, MeasurementBasis(s.basis()), rng).outcome;
        out.raw_outcomes.push_back(static_cast<std::int8_t>(index_of(o)));
        return o == Outcome::kAligned ? 1 : 0;
      }
      case ReceiverStrategy::Kind::kFixedBasisMl: {
        const Outcome o = collapse(group.front().bob_state, MeasurementBasis(s.basis()), rng).outcome;
        out.raw_outcomes.push_back(static_cast<std::int8_t>(index_of(o)));
        const double l1 = likelihood[1][index_of(o)];
        const double l0 = likelihood[0][index_of(o)];
        if (std::abs(l1 - l0) <= kTieTol) {
          ++out.ties;
          return 0;
        }
        return l1 > l0 ? 1 : 0;
      }
      case ReceiverStrategy::Kind::kRepetition: {
        const std::uint64_t m = s.inner().photons_per_bit();
        std::uint64_t ones = 0;
        for (std::uint32_t v = 0; v < s.k(); ++v) ones += decode(group.subspan(v * m, m), s.inner());
        if (2 * ones == s.k()) {
          ++out.ties;
          return 0;
        }
        return 2 * ones > s.k() ? 1 : 0;
      }
    }
    throw std::logic_error("unhandled receiver kind");
  }
};

}  // namespace

bool EncodingRule::distinct() const { return !same_basis(basis_for_one, basis_for_zero); }

ReceiverStrategy ReceiverStrategy::fixed_basis_ml(double angle) {
  return ReceiverStrategy(Kind::kFixedBasisMl, canonical_angle(angle), 1, nullptr);
}

ReceiverStrategy ReceiverStrategy::fixed_basis_direct(double angle) {
  return ReceiverStrategy(Kind::kFixedBasisDirect, canonical_angle(angle), 1, nullptr);
}

ReceiverStrategy ReceiverStrategy::basis_oracle() { return ReceiverStrategy(Kind::kBasisOracle, 0.0, 1, nullptr); }

ReceiverStrategy ReceiverStrategy::repetition(std::uint32_t k, const ReceiverStrategy& inner) {
  if (k == 0) throw std::invalid_argument("repetition: k must be at least 1");
  return ReceiverStrategy(Kind::kRepetition, 0.0, k, std::make_shared<const ReceiverStrategy>(inner));
}

const char* ReceiverStrategy::valid_forms() {
  return "fixed-basis-ml:<deg>, fixed-basis-direct:<deg>, basis-oracle, repetition:<k>:<strategy>";
}

ReceiverStrategy ReceiverStrategy::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "basis-oracle" && colon == std::string::npos) return basis_oracle();
  if (head == "fixed-basis-ml" && colon != std::string::npos) return fixed_basis_ml(parse_degrees(rest, spec));
  if (head == "fixed-basis-direct" && colon != std::string::npos) return fixed_basis_direct(parse_degrees(rest, spec));
  if (head == "repetition" && colon != std::string::npos) {
    const auto second = rest.find(':');
    if (second != std::string::npos) {
      const std::string k_text = rest.substr(0, second);
      const bool digits = !k_text.empty() && k_text.size() <= 9 &&
                          std::all_of(k_text.begin(), k_text.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (digits && std::stoul(k_text) > 0) {
        return repetition(static_cast<std::uint32_t>(std::stoul(k_text)), parse(rest.substr(second + 1)));
      }
    }
  }
  throw std::invalid_argument("invalid receiver strategy '" + spec + "'; valid forms: " + valid_forms());
}

std::uint64_t ReceiverStrategy::photons_per_bit() const {
  return kind_ == Kind::kRepetition ? k_ * inner_->photons_per_bit() : 1;
}

bool ReceiverStrategy::is_counterfactual() const {
  return kind_ == Kind::kBasisOracle || (kind_ == Kind::kRepetition && inner_->is_counterfactual());
}

std::string ReceiverStrategy::label() const {
  switch (kind_) {
    case Kind::kFixedBasisMl:
      return "fixed-basis-ml:" + format_degrees(basis_);
    case Kind::kFixedBasisDirect:
      return "fixed-basis-direct:" + format_degrees(basis_);
    case Kind::kBasisOracle:
      return "basis-oracle";
    case Kind::kRepetition:
      return "repetition:" + std::to_string(k_) + ":" + inner_->label();
  }
  return "unknown";
}

std::vector<SentPhoton> encode(std::span<const std::uint8_t> bits, const EncodingRule& rule, RngStream& rng,
                               std::uint64_t pairs_per_bit, std::uint64_t first_pair_index) {
  if (bits.empty()) throw std::invalid_argument("encode: no bits");
  if (pairs_per_bit == 0) throw std::invalid_argument("encode: pairs_per_bit must be positive");
  const MeasurementBasis bases[2] = {MeasurementBasis(rule.basis_for_zero), MeasurementBasis(rule.basis_for_one)};
  const entangle::PairState pair = entangle::make_pair();
  std::vector<SentPhoton> out;
  out.reserve(bits.size() * pairs_per_bit);
  std::uint64_t index = first_pair_index;
  for (std::uint8_t bit : bits) {
    const MeasurementBasis& basis = bases[bit ? 1 : 0];
    for (std::uint64_t r = 0; r < pairs_per_bit; ++r) {
      const auto alice = entangle::measure_A(pair, basis, rng);
      out.push_back({alice.state_b, basis.angle(), index++});
    }
  }
  return out;
}

std::array<double, 2> outcome_likelihoods(const EncodingRule& rule, const MeasurementBasis& basis, std::uint8_t bit) {
  const entangle::PairState pair = entangle::make_pair();
  const MeasurementBasis alice(rule.basis_for(bit));
  std::array<double, 2> lik{};
  for (int a = 0; a < 2; ++a) {
    const Outcome oa = outcome_from_index(a);
    const double pa = entangle::probability_a(pair, alice, oa);
    if (pa < 1e-12) continue;
    const BornProbabilities pb = born_probabilities(entangle::conditional_state_b(pair, alice, oa), basis);
    lik[0] += pa * pb.p0;
    lik[1] += pa * pb.p1;
  }
  return lik;
}

ReceiveResult receive(std::span<const SentPhoton> photons, const ReceiverStrategy& strategy, const EncodingRule& rule,
                      RngStream& rng) {
  const std::uint64_t m = strategy.photons_per_bit();
  if (photons.size() % m != 0) {
    throw std::invalid_argument("receive: photon count is not a multiple of the photons per bit (" +
                                std::to_string(m) + ")");
  }
  ReceiveResult out;
  out.bits.reserve(photons.size() / m);
  out.raw_outcomes.reserve(photons.size());
  Decoder decoder{rule, rng, out, {}};
  const ReceiverStrategy& leaf = leaf_of(strategy);
  if (leaf.kind() == ReceiverStrategy::Kind::kFixedBasisMl) {
    const MeasurementBasis basis(leaf.basis());
    decoder.likelihood[0] = outcome_likelihoods(rule, basis, 0);
    decoder.likelihood[1] = outcome_likelihoods(rule, basis, 1);
  }
  for (std::size_t i = 0; i < photons.size(); i += m) out.bits.push_back(decoder.decode(photons.subspan(i, m), strategy));
  return out;
}

MutualInformationEstimate mutual_information(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> decoded,
                                             std::uint64_t n_shuffles, std::uint64_t seed, const Execution& exec) {
  if (sent.size() != decoded.size()) throw std::invalid_argument("mutual_information: length mismatch");
  if (sent.empty()) throw std::invalid_argument("mutual_information: empty input");
  const Contingency table = contingency(sent, decoded);
  MutualInformationEstimate est;
  est.mi_bits = std::min(plugin_mutual_information(table), 1.0);
  est.std_err = mutual_information_stderr(table);
  est.n_shuffles = n_shuffles;
  if (n_shuffles > 0) {
    const PermutationNull null = permutation_null(sent, decoded, n_shuffles, seed, exec);
    est.null_q95 = quantile(null.null_mi, 0.95);
    est.p_value = null.p_value;
  }
  const double z = normal_quantile(0.975);
  est.ci95.lo = std::max(0.0, est.mi_bits - z * est.std_err - est.null_q95);
  est.ci95.hi = std::min(1.0, est.mi_bits + z * est.std_err);
  return est;
}

Bits balanced_bits(std::uint64_t n, RngStream& rng) {
  Bits bits(n, 0);
  std::fill(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(n / 2), 1);
  for (std::size_t i = bits.size(); i > 1; --i) std::swap(bits[i - 1], bits[rng.uniform_below(i)]);
  return bits;
}

namespace {

struct BlockResult {
  Bits decoded;
  std::uint64_t ties = 0;
  std::array<std::array<std::uint64_t, 2>, 2> raw{};
};

}  // namespace

TransmissionReport run_protocol(std::uint64_t n_bits, const EncodingRule& rule, const ReceiverStrategy& strategy,
                                std::uint64_t seed, const Execution& exec, std::uint64_t n_shuffles) {
  if (n_bits == 0) throw std::invalid_argument("run_protocol: n_bits must be positive");
  RngStream bit_rng(seed, domain_stream(StreamDomain::kProtocolBits, 0));
  const Bits sent = balanced_bits(n_bits, bit_rng);
  const std::uint64_t ppb = strategy.photons_per_bit();

  const auto blocks = map_blocks<BlockResult>(block_count(n_bits, kProtocolBlockBits), exec, [&](std::uint64_t b) {
    const std::uint64_t begin = b * kProtocolBlockBits;
    const std::uint64_t end = std::min(n_bits, begin + kProtocolBlockBits);
    const std::span<const std::uint8_t> chunk(sent.data() + begin, end - begin);
    RngStream enc_rng(seed, domain_stream(StreamDomain::kProtocolEncode, b));
    RngStream rec_rng(seed, domain_stream(StreamDomain::kProtocolReceive, b));
    const auto photons = encode(chunk, rule, enc_rng, ppb, begin * ppb);
    ReceiveResult rx = receive(photons, strategy, rule, rec_rng);
    BlockResult r;
    r.decoded = std::move(rx.bits);
    r.ties = rx.ties;
    for (std::size_t p = 0; p < rx.raw_outcomes.size(); ++p) {
      if (rx.raw_outcomes[p] < 0) continue;
      ++r.raw[chunk[p / ppb]][static_cast<std::size_t>(rx.raw_outcomes[p])];
    }
    return r;
  });

  TransmissionReport report;
  report.n_bits = n_bits;
  report.pairs_per_bit = ppb;
  report.seed = seed;
  report.rng_algorithm = std::string(RngStream::kAlgorithm);
  report.strategy = strategy.label();
  report.counterfactual = strategy.is_counterfactual();
  report.rule = rule;

  Bits decoded;
  decoded.reserve(n_bits);
  for (const BlockResult& r : blocks) {
    decoded.insert(decoded.end(), r.decoded.begin(), r.decoded.end());
    report.ties += r.ties;
    for (int b = 0; b < 2; ++b)
      for (int o = 0; o < 2; ++o) report.raw_counts[b][o] += r.raw[b][o];
  }

  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < n_bits; ++i) errors += sent[i] != decoded[i];
  report.ber = static_cast<double>(errors) / static_cast<double>(n_bits);
  report.mi = mutual_information(sent, decoded, n_shuffles, seed, exec);

  const std::uint64_t n0 = report.raw_counts[0][0] + report.raw_counts[0][1];
  const std::uint64_t n1 = report.raw_counts[1][0] + report.raw_counts[1][1];
  if (n0 > 0 && n1 > 0) {
    report.raw_outcome_z = two_proportion_z(report.raw_counts[0][0], n0, report.raw_counts[1][0], n1);
  }
  return report;
}

}  // namespace collapsesim::protocol
