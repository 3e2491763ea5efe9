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

// Wheeler's delayed-choice experiment in a Mach-Zehnder interferometer:
// balanced beamsplitter, phase shifter on the second arm, optional second
// beamsplitter, detectors D0/D1 on the two output ports.

#include <cstdint>

#include "collapsesim/measurement.hpp"
#include "collapsesim/parallel.hpp"

namespace collapsesim::mzi {

enum class SecondSplitter { kPresent, kAbsent };

struct ChoicePolicy {
  enum class Kind { kFixed, kDelayedRandom };
  Kind kind = Kind::kFixed;
  double p_present = 1.0;  // used by kDelayedRandom

  static ChoicePolicy fixed() { return {Kind::kFixed, 1.0}; }
  /// Throws std::invalid_argument unless p_present lies in [0, 1].
  static ChoicePolicy delayed_random(double p_present);
};

struct MziConfig {
  double phase = 0.0;
  SecondSplitter second_bs = SecondSplitter::kPresent;  // ignored by kDelayedRandom
  ChoicePolicy policy;
};

struct DetectorCounts {
  std::uint64_t n = 0;
  std::uint64_t d0 = 0;
  std::uint64_t d1 = 0;

  DetectorCounts& operator+=(const DetectorCounts& o) {
    n += o.n;
    d0 += o.d0;
    d1 += o.d1;
    return *this;
  }
  double d0_fraction() const { return n ? static_cast<double>(d0) / static_cast<double>(n) : 0.0; }
};

struct MziStats {
  std::uint64_t n = 0;
  std::uint64_t count_d0 = 0;
  std::uint64_t count_d1 = 0;
  DetectorCounts present;  // photons that met the second beamsplitter
  DetectorCounts absent;
};

/// Path state after the first beamsplitter and the phase shifter.
Qubit path_superposition(double phase);

/// Two-mode evolution of the output ports for one choice.
Qubit output_state(double phase, SecondSplitter second_bs);

/// P(D0), P(D1). Closed: cos^2(phase/2), sin^2(phase/2). Open: 1/2, 1/2.
BornProbabilities detection_probabilities(double phase, SecondSplitter second_bs);

/// n single photons. Per photon: build the path superposition, then (for the
/// delayed policy) draw the splitter choice, then detect. Detection uses
/// RngStream(seed, kMziDetect|block) and choices use (seed, kMziChoice|block),
/// so a delayed run with p_present = 1 (or 0) detects exactly as the fixed
/// closed (or open) run with the same seed. Throws std::invalid_argument for n == 0.
MziStats run_mzi(const MziConfig& config, std::uint64_t n, std::uint64_t seed, const Execution& exec = {});

struct TimingComparison {
  SecondSplitter branch;
  DetectorCounts delayed;  // delayed-choice photons that got this branch
  DetectorCounts fixed;    // fixed-choice reference run
  double analytic_d0 = 0.0;
  double z = 0.0;          // two-proportion z of delayed vs fixed D0 fractions
  bool consistent = false; // |z| <= 4
};

/// Runs `delayed` (must use the delayed-random policy) and the fixed
/// configuration `fixed` with equal phase, and compares D0 statistics of the
/// delayed photons that received fixed's choice against the fixed run. The
/// fixed run uses derive_seed(seed, 1) so the two samples are independent.
/// Throws std::invalid_argument for mismatched phases or policies.
TimingComparison choice_timing_invariance(const MziConfig& delayed, const MziConfig& fixed, std::uint64_t n,
                                          std::uint64_t seed, const Execution& exec = {});

}  // namespace collapsesim::mzi
