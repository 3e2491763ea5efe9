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

#include "collapsesim/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "collapsesim/errors.hpp"

namespace collapsesim::optics {

LightBeam natural_light() { return {Density2::maximally_mixed(), 1.0}; }

LightBeam linearly_polarized(double angle, double intensity) {
  return {Density2::pure(ket_from_angle(angle)), intensity};
}

LightBeam transmit_analytic(const LightBeam& beam, const Polarizer& p) {
  const Qubit& axis = p.axis().aligned();
  const double pass = std::clamp(beam.rho.expectation(axis), 0.0, 1.0);
  return {Density2::pure(axis), beam.intensity * pass};
}

AnalyticCascade cascade_analytic(const LightBeam& beam, std::span<const double> axes) {
  if (axes.empty()) throw std::invalid_argument("cascade_analytic: no polarizers");
  AnalyticCascade out{{}, beam};
  out.stage_intensity.reserve(axes.size());
  for (double angle : axes) {
    out.output = transmit_analytic(out.output, Polarizer(angle));
    out.stage_intensity.push_back(out.output.intensity);
  }
  return out;
}

PhotonRecord transmit_photon_mc(PhotonRecord photon, const Polarizer& p, RngStream& rng) {
  if (!photon.alive) throw ContractViolation("transmit_photon_mc: photon was already absorbed");
  const OutcomeRecord r = collapse(photon.state, p.axis(), rng);
  photon.collapse_history.push_back({p.axis().angle(), r.outcome});
  if (r.outcome == Outcome::kAligned) {
    photon.state = r.post_state;
  } else {
    photon.alive = false;
  }
  return photon;
}

Source Source::linear(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("Source::linear: angle must be finite");
  return Source(Kind::kLinear, canonical_angle(angle));
}

Source Source::parse(const std::string& spec) {
  if (spec == "natural") return natural();
  constexpr std::string_view kPrefix = "linear:";
  if (spec.rfind(kPrefix, 0) == 0) {
    const std::string rest = spec.substr(kPrefix.size());
    std::size_t used = 0;
    double deg = 0.0;
    try {
      deg = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && used > 0 && std::isfinite(deg)) return linear(degrees_to_radians(deg));
  }
  throw std::invalid_argument("invalid source '" + spec + "': expected 'natural' or 'linear:<degrees>'");
}

std::string Source::label() const {
  if (is_natural()) return "natural";
  std::ostringstream os;
  os.precision(10);
  os << "linear:" << radians_to_degrees(angle_);
  return os.str();
}

Qubit Source::emit(RngStream& rng) const {
  if (is_natural()) return ket_from_angle(rng.uniform() * std::numbers::pi);
  return ket_from_angle(angle_);
}

namespace {

struct StageCounts {
  std::vector<std::uint64_t> counts;

  StageCounts& operator+=(const StageCounts& o) {
    if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    return *this;
  }
};

}  // namespace

McCascade cascade_mc(std::uint64_t n_photons, std::span<const double> axes, const Source& source,
                     std::uint64_t seed, const Execution& exec) {
  if (n_photons == 0) throw std::invalid_argument("cascade_mc: n_photons must be positive");
  if (axes.empty()) throw std::invalid_argument("cascade_mc: no polarizers");
  std::vector<Polarizer> polarizers;
  polarizers.reserve(axes.size());
  for (double a : axes) polarizers.emplace_back(a);

  const std::uint64_t n_blocks = block_count(n_photons, kDefaultBlockSize);
  const StageCounts total = reduce_blocks<StageCounts>(n_blocks, exec, [&](std::uint64_t b) {
    StageCounts local{std::vector<std::uint64_t>(polarizers.size(), 0)};
    RngStream rng(seed, domain_stream(StreamDomain::kCascade, b));
    const std::uint64_t begin = b * kDefaultBlockSize;
    const std::uint64_t end = std::min(n_photons, begin + kDefaultBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      PhotonRecord photon(source.emit(rng));
      photon.collapse_history.reserve(polarizers.size());
      for (std::size_t s = 0; s < polarizers.size(); ++s) {
        photon = transmit_photon_mc(std::move(photon), polarizers[s], rng);
        if (!photon.alive) break;
        ++local.counts[s];
      }
    }
    return local;
  });

  McCascade out;
  out.n_source = n_photons;
  out.seed = seed;
  out.stage_counts = total.counts;
  out.stage_counts.resize(polarizers.size(), 0);
  return out;
}

}  // namespace collapsesim::optics
