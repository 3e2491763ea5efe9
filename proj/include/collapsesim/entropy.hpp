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

#include <span>
#include <vector>

#include "collapsesim/linalg.hpp"
#include "collapsesim/measurement.hpp"

namespace collapsesim {

/// Validated discrete distribution: entries in [0, 1] (slightly negative
/// rounding noise above -1e-12 is clamped to 0) summing to 1 within 1e-9.
class ProbabilityVector {
 public:
  /// Throws std::invalid_argument when the invariants do not hold.
  explicit ProbabilityVector(std::vector<double> probs);

  std::span<const double> values() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// H = -sum p log2 p, with 0 log2 0 = 0.
double shannon_entropy(const ProbabilityVector& p);

/// Entropy (bits) of the Born distribution of a pure qubit in a given basis.
double qubit_superposition_entropy(const Qubit& state, const MeasurementBasis& basis);

struct EntropyReport {
  double before_bits = 0.0;
  double after_bits = 0.0;
  double delta_bits = 0.0;
  Outcome outcome = Outcome::kAligned;
};

/// Entropy of the measurement distribution before and after one collapse.
/// The post-measurement state is a basis eigenvector, so after_bits is the
/// entropy of a one-hot distribution: exactly 0.
EntropyReport collapse_entropy_report(const Qubit& state, const MeasurementBasis& basis, RngStream& rng);

/// Throws std::invalid_argument if rho is not a valid density operator.
template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho);

}  // namespace collapsesim
