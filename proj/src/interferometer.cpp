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

#include "collapsesim/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collapsesim/stats.hpp"

namespace collapsesim::mzi {
namespace {

// Balanced beamsplitter (Hadamard convention): port 0 -> (0 + 1)/sqrt2.
Matrix<2> beamsplitter() {
  const double h = std::sqrt(0.5);
  Matrix<2> bs;
  bs(0, 0) = h;
  bs(0, 1) = h;
  bs(1, 0) = h;
  bs(1, 1) = -h;
  return bs;
}

Matrix<2> phase_shifter(double phase) {
  Matrix<2> ps;
  ps(0, 0) = 1.0;
  ps(1, 1) = std::polar(1.0, phase);
  return ps;
}

const MeasurementBasis& detector_basis() {
  static const MeasurementBasis basis(0.0);  // outcome aligned = port 0 = D0
  return basis;
}

}  // namespace

ChoicePolicy ChoicePolicy::delayed_random(double p_present) {
  if (!(p_present >= 0.0 && p_present <= 1.0)) {
    throw std::invalid_argument("delayed_random: p_present must lie in [0, 1]");
  }
  return {Kind::kDelayedRandom, p_present};
}

Qubit path_superposition(double phase) {
  return apply(phase_shifter(phase), apply(beamsplitter(), Qubit({1.0, 0.0})));
}

Qubit output_state(double phase, SecondSplitter second_bs) {
  const Qubit path = path_superposition(phase);
  return second_bs == SecondSplitter::kPresent ? apply(beamsplitter(), path) : path;
}

BornProbabilities detection_probabilities(double phase, SecondSplitter second_bs) {
  const Qubit out = output_state(phase, second_bs);
  const double p0 = std::norm(out[0]);
  const double p1 = std::norm(out[1]);
  return {p0 / (p0 + p1), p1 / (p0 + p1)};
}

MziStats run_mzi(const MziConfig& config, std::uint64_t n, std::uint64_t seed, const Execution& exec) {
  if (n == 0) throw std::invalid_argument("run_mzi: n must be positive");
  const bool delayed = config.policy.kind == ChoicePolicy::Kind::kDelayedRandom;
  const Matrix<2> bs = beamsplitter();

  struct Tally {
    DetectorCounts present;
    DetectorCounts absent;
    Tally& operator+=(const Tally& o) {
      present += o.present;
      absent += o.absent;
      return *this;
    }
  };

  const Tally total = reduce_blocks<Tally>(block_count(n, kDefaultBlockSize), exec, [&](std::uint64_t b) {
    RngStream detect(seed, domain_stream(StreamDomain::kMziDetect, b));
    RngStream choice(seed, domain_stream(StreamDomain::kMziChoice, b));
    const std::uint64_t begin = b * kDefaultBlockSize;
    const std::uint64_t end = std::min(n, begin + kDefaultBlockSize);
    Tally local;
    for (std::uint64_t i = begin; i < end; ++i) {
      Qubit state = path_superposition(config.phase);
      // The configuration is fixed only now, after the photon is in both arms.
      SecondSplitter arm = config.second_bs;
      if (delayed) arm = choice.uniform() < config.policy.p_present ? SecondSplitter::kPresent : SecondSplitter::kAbsent;
      if (arm == SecondSplitter::kPresent) state = apply(bs, state);
      const Outcome o = collapse(Qubit::normalized(state.amplitudes()), detector_basis(), detect).outcome;
      DetectorCounts& slot = arm == SecondSplitter::kPresent ? local.present : local.absent;
      ++slot.n;
      ++(o == Outcome::kAligned ? slot.d0 : slot.d1);
    }
    return local;
  });

  MziStats stats;
  stats.present = total.present;
  stats.absent = total.absent;
  stats.n = total.present.n + total.absent.n;
  stats.count_d0 = total.present.d0 + total.absent.d0;
  stats.count_d1 = total.present.d1 + total.absent.d1;
  return stats;
}

TimingComparison choice_timing_invariance(const MziConfig& delayed, const MziConfig& fixed, std::uint64_t n,
                                          std::uint64_t seed, const Execution& exec) {
  if (delayed.policy.kind != ChoicePolicy::Kind::kDelayedRandom) {
    throw std::invalid_argument("choice_timing_invariance: first config must use the delayed-random policy");
  }
  if (fixed.policy.kind != ChoicePolicy::Kind::kFixed) {
    throw std::invalid_argument("choice_timing_invariance: second config must use the fixed policy");
  }
  if (canonical_angle(delayed.phase / 2) != canonical_angle(fixed.phase / 2)) {
    throw std::invalid_argument("choice_timing_invariance: configs must share the phase");
  }
  const MziStats d = run_mzi(delayed, n, seed, exec);
  const MziStats f = run_mzi(fixed, n, derive_seed(seed, 1), exec);

  TimingComparison cmp;
  cmp.branch = fixed.second_bs;
  cmp.delayed = fixed.second_bs == SecondSplitter::kPresent ? d.present : d.absent;
  cmp.fixed = fixed.second_bs == SecondSplitter::kPresent ? f.present : f.absent;
  cmp.analytic_d0 = detection_probabilities(fixed.phase, fixed.second_bs).p0;
  if (cmp.delayed.n > 0 && cmp.fixed.n > 0) {
    cmp.z = two_proportion_z(cmp.delayed.d0, cmp.delayed.n, cmp.fixed.d0, cmp.fixed.n);
    cmp.consistent = std::abs(cmp.z) <= 4.0;
  }
  return cmp;
}

}  // namespace collapsesim::mzi
