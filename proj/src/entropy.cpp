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

#include "collapsesim/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collapsesim {
namespace {

constexpr double kNegativeSlack = 1e-12;
constexpr double kSumTol = 1e-9;

double entropy_of(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h + 0.0;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kNegativeSlack || p > 1.0 + kNegativeSlack) {
      throw std::invalid_argument("ProbabilityVector: entry outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTol) throw std::invalid_argument("ProbabilityVector: entries do not sum to 1");
}

double shannon_entropy(const ProbabilityVector& p) { return entropy_of(p.values()); }

double qubit_superposition_entropy(const Qubit& state, const MeasurementBasis& basis) {
  const BornProbabilities born = born_probabilities(state, basis);
  return shannon_entropy(ProbabilityVector({born.p0, born.p1}));
}

EntropyReport collapse_entropy_report(const Qubit& state, const MeasurementBasis& basis, RngStream& rng) {
  EntropyReport report;
  report.before_bits = qubit_superposition_entropy(state, basis);
  const OutcomeRecord record = collapse(state, basis, rng);
  report.outcome = record.outcome;
  // The eigenvector is measured in its own basis: a one-hot distribution.
  const double after[2] = {record.outcome == Outcome::kAligned ? 1.0 : 0.0,
                           record.outcome == Outcome::kAligned ? 0.0 : 1.0};
  report.after_bits = entropy_of(after);
  report.delta_bits = report.after_bits - report.before_bits;
  return report;
}

template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
  if (auto problem = rho.validate()) {
    throw std::invalid_argument("von_neumann_entropy: invalid density operator (" + *problem + ")");
  }
  const auto eig = hermitian_eigenvalues(rho.matrix());
  double h = 0.0;
  for (double lambda : eig) {
    if (lambda > 1e-15) h -= lambda * std::log2(lambda);
  }
  return std::max(h, 0.0);
}

template double von_neumann_entropy(const DensityMatrix<2>&);
template double von_neumann_entropy(const DensityMatrix<4>&);

}  // namespace collapsesim
