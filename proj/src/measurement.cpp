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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collapsesim/errors.hpp"

namespace collapsesim {

double canonical_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("angle must be finite");
  double r = std::fmod(theta, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r = 0.0;  // -tiny + pi rounds up to pi
  return r + 0.0;                      // drops a negative zero
}

Qubit ket_from_angle(double theta) {
  const double t = canonical_angle(theta);
  if (t == 0.0) return Qubit({1.0, 0.0});
  if (t == std::numbers::pi / 2) return Qubit({0.0, 1.0});
  return Qubit({std::cos(t), std::sin(t)});
}

namespace {

Qubit perpendicular(const Qubit& v) { return Qubit({-v[1], v[0]}); }

}  // namespace

MeasurementBasis::MeasurementBasis(double theta)
    : theta_(canonical_angle(theta)), aligned_(ket_from_angle(theta_)), orthogonal_(perpendicular(aligned_)) {}

BornProbabilities born_probabilities(const Qubit& state, const MeasurementBasis& basis) {
  if (!state.is_normalized()) {
    throw ContractViolation("born_probabilities: state is not normalized");
  }
  return {std::norm(inner(basis.aligned(), state)), std::norm(inner(basis.orthogonal(), state))};
}

std::size_t sample_categorical(std::span<const double> probs, double u) {
  double total = 0.0;
  std::size_t last = probs.size();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) {
      total += probs[k];
      last = k;
    }
  }
  if (last == probs.size()) throw std::invalid_argument("sample_categorical: no positive probability");
  const double target = u * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < last; ++k) {
    if (!(probs[k] > 0.0)) continue;
    cumulative += probs[k];
    if (target < cumulative) return k;
  }
  return last;
}

OutcomeRecord collapse(const Qubit& state, const MeasurementBasis& basis, RngStream& rng) {
  const BornProbabilities p = born_probabilities(state, basis);
  const double probs[2] = {p.p0, p.p1};
  const Outcome o = outcome_from_index(static_cast<int>(sample_categorical(probs, rng.uniform())));
  return OutcomeRecord{o, basis.eigenvector(o), basis, o == Outcome::kAligned ? p.p0 : p.p1};
}

}  // namespace collapsesim
