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

// Test-only generators and oracles. Nothing here calls into the code paths it
// is used to check.

#include <cmath>
#include <numbers>

#include "collapsesim/linalg.hpp"
#include "collapsesim/rng.hpp"

namespace collapsesim::test_support {

inline constexpr double kPi = std::numbers::pi;

// Haar-ish random pure qubit with a complex relative phase.
inline Qubit random_qubit(RngStream& rng) {
  const double chi = std::acos(std::sqrt(rng.uniform()));
  const double phase = 2.0 * kPi * rng.uniform();
  return Qubit({std::cos(chi), std::polar(std::sin(chi), phase)});
}

// Random real linear polarization.
inline Qubit random_linear(RngStream& rng) {
  const double t = kPi * rng.uniform();
  return Qubit({std::cos(t), std::sin(t)});
}

inline double random_angle(RngStream& rng) { return kPi * rng.uniform(); }

// Closed-form Born probability for real linear polarization at phi measured
// along theta (Malus).
inline double malus(double phi, double theta) {
  const double c = std::cos(phi - theta);
  return c * c;
}

// Singlet joint probabilities from the closed form: equal outcomes with total
// probability sin^2(delta), each half of it.
inline std::array<double, 4> singlet_joint_oracle(double theta_a, double theta_b) {
  const double s = std::sin(theta_a - theta_b);
  const double c = std::cos(theta_a - theta_b);
  return {0.5 * s * s, 0.5 * c * c, 0.5 * c * c, 0.5 * s * s};
}

}  // namespace collapsesim::test_support
