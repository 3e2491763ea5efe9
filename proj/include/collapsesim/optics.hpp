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

// Polarizers and the two- and three-polarizer cascades, analytic
// (density-operator) and per-photon Monte Carlo.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "collapsesim/linalg.hpp"
#include "collapsesim/measurement.hpp"
#include "collapsesim/parallel.hpp"

namespace collapsesim::optics {

class Polarizer {
 public:
  explicit Polarizer(double axis_angle) : axis_(axis_angle) {}
  const MeasurementBasis& axis() const { return axis_; }

 private:
  MeasurementBasis axis_;
};

/// Polarization state plus intensity, normalized so that the source is 1.0.
struct LightBeam {
  Density2 rho;
  double intensity;
};

/// Unpolarized light: rho = I/2, intensity 1.
LightBeam natural_light();
LightBeam linearly_polarized(double angle, double intensity = 1.0);

/// Intensity scales by <axis|rho|axis>; the transmitted light is polarized
/// along the axis. Reduces to Malus' cos^2 law for linearly polarized input.
LightBeam transmit_analytic(const LightBeam& beam, const Polarizer& p);

struct AnalyticCascade {
  std::vector<double> stage_intensity;
  LightBeam output;
};

/// Throws std::invalid_argument for an empty axis list.
AnalyticCascade cascade_analytic(const LightBeam& beam, std::span<const double> axes);

struct CollapseEvent {
  double basis_angle;
  Outcome outcome;
};

struct PhotonRecord {
  Qubit state;
  bool alive = true;
  std::vector<CollapseEvent> collapse_history;

  explicit PhotonRecord(const Qubit& s) : state(s) {}
};

/// Collapse in the polarizer basis; the aligned outcome passes with the state
/// set to the axis eigenvector, the orthogonal one is absorbed. Throws
/// ContractViolation for an absorbed photon.
PhotonRecord transmit_photon_mc(PhotonRecord photon, const Polarizer& p, RngStream& rng);

/// Photon source for Monte Carlo runs. A natural source emits each photon in
/// an independent pure state at a uniform random angle in [0, pi).
class Source {
 public:
  static Source natural() { return Source(Kind::kNatural, 0.0); }
  /// Throws std::invalid_argument for a non-finite angle.
  static Source linear(double angle);
  /// Parses "natural" or "linear:<degrees>".
  static Source parse(const std::string& spec);

  bool is_natural() const { return kind_ == Kind::kNatural; }
  double angle() const { return angle_; }
  std::string label() const;

  Qubit emit(RngStream& rng) const;

 private:
  enum class Kind { kNatural, kLinear };
  Source(Kind k, double a) : kind_(k), angle_(a) {}
  Kind kind_;
  double angle_;
};

struct McCascade {
  std::uint64_t n_source = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> stage_counts;

  double fraction(std::size_t stage) const {
    return static_cast<double>(stage_counts.at(stage)) / static_cast<double>(n_source);
  }
};

/// Threads n_photons source photons through the polarizers. Photons are
/// processed in blocks of kDefaultBlockSize; block b draws from
/// RngStream(seed, kCascade|b), so counts do not depend on exec.workers.
/// Throws std::invalid_argument for n_photons == 0 or empty axes.
McCascade cascade_mc(std::uint64_t n_photons, std::span<const double> axes, const Source& source,
                     std::uint64_t seed, const Execution& exec = {});

}  // namespace collapsesim::optics
