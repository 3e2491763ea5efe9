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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collapsesim/errors.hpp"

namespace collapsesim::entangle {
namespace {

constexpr double kBranchTol = 1e-12;

// <a_o| (x) 1 applied to the joint state: B's unnormalized branch.
Qubit project_a(const PairState& pair, const Qubit& a) {
  const TwoQubit& psi = pair.joint;
  return Qubit({std::conj(a[0]) * psi[0] + std::conj(a[1]) * psi[2],
                std::conj(a[0]) * psi[1] + std::conj(a[1]) * psi[3]});
}

void require_valid(const PairState& pair) {
  if (!pair.joint.is_normalized()) throw ContractViolation("pair state is not normalized");
}

struct EqualCount {
  std::uint64_t equal = 0;
  EqualCount& operator+=(const EqualCount& o) {
    equal += o.equal;
    return *this;
  }
};

}  // namespace

PairState make_pair() { return make_pair(PairKind::kSinglet); }

PairState make_pair(PairKind kind) {
  const double h = std::sqrt(0.5);
  switch (kind) {
    case PairKind::kSinglet:
      return {TwoQubit({0.0, h, -h, 0.0})};
    case PairKind::kPsiPlus:
      return {TwoQubit({0.0, h, h, 0.0})};
  }
  throw std::invalid_argument("unknown pair kind");
}

PairKind parse_pair_kind(const std::string& name) {
  if (name == "singlet") return PairKind::kSinglet;
  if (name == "psi-plus") return PairKind::kPsiPlus;
  throw std::invalid_argument("unknown pair state '" + name + "': expected 'singlet' or 'psi-plus'");
}

std::string to_string(PairKind kind) { return kind == PairKind::kSinglet ? "singlet" : "psi-plus"; }

PairState product_pair(const Qubit& a, const Qubit& b) { return {tensor_product(a, b)}; }

double probability_a(const PairState& pair, const MeasurementBasis& basis_a, Outcome outcome) {
  require_valid(pair);
  return project_a(pair, basis_a.eigenvector(outcome)).norm_squared();
}

Qubit conditional_state_b(const PairState& pair, const MeasurementBasis& basis_a, Outcome outcome) {
  require_valid(pair);
  const Qubit branch = project_a(pair, basis_a.eigenvector(outcome));
  if (branch.norm_squared() < kBranchTol) {
    throw ContractViolation("conditional_state_b: requested branch has zero probability");
  }
  return Qubit::normalized(branch.amplitudes());
}

AliceMeasurement measure_A(const PairState& pair, const MeasurementBasis& basis_a, RngStream& rng) {
  require_valid(pair);
  const double probs[2] = {project_a(pair, basis_a.aligned()).norm_squared(),
                           project_a(pair, basis_a.orthogonal()).norm_squared()};
  const Outcome o = outcome_from_index(static_cast<int>(sample_categorical(probs, rng.uniform())));
  const double total = probs[0] + probs[1];
  OutcomeRecord record{o, basis_a.eigenvector(o), basis_a, probs[index_of(o)] / total};
  return {record, conditional_state_b(pair, basis_a, o)};
}

std::array<double, 4> joint_probabilities(const PairState& pair, const MeasurementBasis& basis_a,
                                          const MeasurementBasis& basis_b) {
  require_valid(pair);
  std::array<double, 4> p{};
  for (int a = 0; a < 2; ++a) {
    const Qubit branch = project_a(pair, basis_a.eigenvector(outcome_from_index(a)));
    for (int b = 0; b < 2; ++b) {
      p[2 * a + b] = std::norm(inner(basis_b.eigenvector(outcome_from_index(b)), branch));
    }
  }
  return p;
}

JointOutcome measure_pair(const PairState& pair, const MeasurementBasis& basis_a,
                          const MeasurementBasis& basis_b, RngStream& rng) {
  const auto p = joint_probabilities(pair, basis_a, basis_b);
  const auto k = static_cast<int>(sample_categorical(p, rng.uniform()));
  return {outcome_from_index(k / 2), outcome_from_index(k % 2), basis_a, basis_b};
}

double analytic_correlation(const PairState& pair, double theta_a, double theta_b) {
  const auto p = joint_probabilities(pair, MeasurementBasis(theta_a), MeasurementBasis(theta_b));
  return (p[0] + p[3]) - (p[1] + p[2]);
}

CorrelationStats correlation(const PairState& pair, double theta_a, double theta_b, std::uint64_t n,
                             std::uint64_t seed, const Execution& exec, StreamDomain domain) {
  if (n == 0) throw std::invalid_argument("correlation: n must be positive");
  const MeasurementBasis basis_a(theta_a);
  const MeasurementBasis basis_b(theta_b);
  const auto probs = joint_probabilities(pair, basis_a, basis_b);

  const std::uint64_t n_blocks = block_count(n, kDefaultBlockSize);
  const EqualCount total = reduce_blocks<EqualCount>(n_blocks, exec, [&](std::uint64_t b) {
    RngStream rng(seed, domain_stream(domain, b));
    const std::uint64_t begin = b * kDefaultBlockSize;
    const std::uint64_t end = std::min(n, begin + kDefaultBlockSize);
    EqualCount local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto k = sample_categorical(probs, rng.uniform());
      if (k == 0 || k == 3) ++local.equal;
    }
    return local;
  });

  CorrelationStats stats;
  stats.n = n;
  const double nn = static_cast<double>(n);
  stats.e_value = (2.0 * static_cast<double>(total.equal) - nn) / nn;
  stats.std_err = std::sqrt(std::max(0.0, 1.0 - stats.e_value * stats.e_value) / nn);
  return stats;
}

CorrelationStats correlation(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed,
                             const Execution& exec) {
  return correlation(make_pair(), theta_a, theta_b, n, seed, exec);
}

ChshSettings standard_chsh_settings() {
  constexpr double pi = std::numbers::pi;
  return {0.0, pi / 4, pi / 8, 3 * pi / 8};
}

namespace {

std::array<std::pair<double, double>, 4> chsh_terms(const ChshSettings& s) {
  return {{{s.a, s.b}, {s.a, s.b_prime}, {s.a_prime, s.b}, {s.a_prime, s.b_prime}}};
}

constexpr std::array<double, 4> kChshSigns = {1.0, -1.0, 1.0, 1.0};

}  // namespace

ChshResult chsh(const PairState& pair, const ChshSettings& settings, std::uint64_t n_per_setting,
                std::uint64_t seed, const Execution& exec) {
  if (n_per_setting == 0) throw std::invalid_argument("chsh: n_per_setting must be positive");
  ChshResult out;
  double signed_sum = 0.0;
  double var = 0.0;
  const auto terms = chsh_terms(settings);
  for (std::size_t t = 0; t < 4; ++t) {
    out.terms[t] = correlation(pair, terms[t].first, terms[t].second, n_per_setting, seed, exec,
                               static_cast<StreamDomain>(static_cast<std::uint16_t>(StreamDomain::kChsh) + t));
    signed_sum += kChshSigns[t] * out.terms[t].e_value;
    var += out.terms[t].std_err * out.terms[t].std_err;
  }
  out.s = std::abs(signed_sum);
  out.std_err = std::sqrt(var);
  return out;
}

ChshResult chsh(const ChshSettings& settings, std::uint64_t n_per_setting, std::uint64_t seed,
                const Execution& exec) {
  return chsh(make_pair(), settings, n_per_setting, seed, exec);
}

double analytic_chsh(const PairState& pair, const ChshSettings& settings) {
  double sum = 0.0;
  const auto terms = chsh_terms(settings);
  for (std::size_t t = 0; t < 4; ++t) sum += kChshSigns[t] * analytic_correlation(pair, terms[t].first, terms[t].second);
  return std::abs(sum);
}

Density2 bob_unconditional_state(const PairState& pair, const MeasurementBasis& basis_a) {
  require_valid(pair);
  Matrix<2> rho;
  for (int a = 0; a < 2; ++a) {
    // p(a) |b_a><b_a| with |b_a> normalized equals the unnormalized outer product.
    const Qubit branch = project_a(pair, basis_a.eigenvector(outcome_from_index(a)));
    rho = rho + outer(branch, branch);
  }
  return Density2(rho);
}

double no_signaling_check(std::span<const double> bases_a, const PairState& pair) {
  if (bases_a.empty()) throw std::invalid_argument("no_signaling_check: no Alice bases");
  std::vector<Density2> states;
  states.reserve(bases_a.size());
  for (double theta : bases_a) states.push_back(bob_unconditional_state(pair, MeasurementBasis(theta)));
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) worst = std::max(worst, trace_distance(states[i], states[j]));
  return worst;
}

}  // namespace collapsesim::entangle
