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

#include <cstdint>
#include <numbers>
#include <span>

#include "collapsesim/linalg.hpp"
#include "collapsesim/rng.hpp"

namespace collapsesim {

/// Reduces a polarization angle to [0, pi). Throws std::invalid_argument if
/// theta is not finite.
double canonical_angle(double theta);

// deg / 180 first: dyadic fractions of a half turn (90, 45, 22.5, ...) then
// land exactly on the corresponding multiple of the double pi.
inline double degrees_to_radians(double deg) { return deg / 180.0 * std::numbers::pi; }
inline double radians_to_degrees(double rad) { return rad / std::numbers::pi * 180.0; }

/// Linear polarization |theta> = (cos theta, sin theta). The two quarter-turn
/// angles representable after canonicalization (0 and the double nearest
/// pi/2) map to the exact axis vectors, so crossed polarizers block exactly.
Qubit ket_from_angle(double theta);

enum class Outcome : std::uint8_t { kAligned = 0, kOrthogonal = 1 };

constexpr int index_of(Outcome o) { return static_cast<int>(o); }
constexpr Outcome outcome_from_index(int i) { return i == 0 ? Outcome::kAligned : Outcome::kOrthogonal; }

/// Orthonormal pair {|theta>, |theta_perp>}, theta stored canonicalized.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(double theta);

  double angle() const { return theta_; }
  const Qubit& aligned() const { return aligned_; }
  const Qubit& orthogonal() const { return orthogonal_; }
  const Qubit& eigenvector(Outcome o) const { return o == Outcome::kAligned ? aligned_ : orthogonal_; }

 private:
  double theta_;
  Qubit aligned_;
  Qubit orthogonal_;
};

struct BornProbabilities {
  double p0 = 0.0;  // aligned
  double p1 = 0.0;  // orthogonal
};

/// Throws ContractViolation when |norm^2 - 1| > 1e-9.
BornProbabilities born_probabilities(const Qubit& state, const MeasurementBasis& basis);

struct OutcomeRecord {
  Outcome outcome;
  Qubit post_state;
  MeasurementBasis basis;
  double probability;
};

/// Projective measurement: samples the outcome from the Born rule with one
/// uniform draw and replaces the state by the selected eigenvector.
OutcomeRecord collapse(const Qubit& state, const MeasurementBasis& basis, RngStream& rng);

/// Picks index k with probability probs[k] / sum(probs) using the uniform u in
/// [0, 1). Zero-probability entries are never returned.
std::size_t sample_categorical(std::span<const double> probs, double u);

}  // namespace collapsesim
