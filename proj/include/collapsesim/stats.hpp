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

// Statistical machinery shared by every Monte Carlo check: binomial bands,
// Wilson intervals, 2x2 contingency tables and the label-shuffling
// permutation test for independence of two bit streams.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "collapsesim/parallel.hpp"
#include "collapsesim/rng.hpp"

namespace collapsesim {

using Bits = std::vector<std::uint8_t>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Inverse standard normal CDF.
double normal_quantile(double p);

/// Wilson score interval. Throws std::invalid_argument for trials == 0,
/// successes > trials, or confidence outside (0, 1).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95);

struct BinomialEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  Interval ci95;

  static BinomialEstimate from_counts(std::uint64_t successes, std::uint64_t trials);
};

/// sqrt(p (1 - p) / n): standard deviation of a binomial fraction.
double binomial_sigma(double p, std::uint64_t n);

/// (successes/n - p) / binomial_sigma(p, n). For p in {0, 1} the band has zero
/// width: returns 0 on an exact match and +/-inf otherwise.
double binomial_z(std::uint64_t successes, std::uint64_t n, double p);

/// z-score of the difference of two independent binomial fractions, using the
/// pooled variance. Returns 0 when both fractions are equal.
double two_proportion_z(std::uint64_t s1, std::uint64_t n1, std::uint64_t s2, std::uint64_t n2);

/// Counts n[x][y] for paired bits; entries are indexed 2*x + y.
struct Contingency {
  std::array<std::uint64_t, 4> counts{};

  std::uint64_t n() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
  std::uint64_t x_ones() const { return counts[2] + counts[3]; }
  std::uint64_t y_ones() const { return counts[1] + counts[3]; }
};

/// Throws std::invalid_argument when lengths differ.
Contingency contingency(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// Plug-in mutual information (bits) of the empirical joint distribution.
double plugin_mutual_information(const Contingency& table);

/// Delta-method standard error of the plug-in estimate: the sample standard
/// deviation of the information density log2 p(x,y)/(p(x)p(y)), over sqrt(n).
double mutual_information_stderr(const Contingency& table);

struct PermutationNull {
  double observed = 0.0;
  double p_value = 1.0;
  std::uint64_t n_shuffles = 0;
  std::vector<double> null_mi;  // one entry per shuffle, in shuffle order
};

/// Label-shuffling null distribution of the plug-in MI. Shuffle s permutes a
/// copy of y with RngStream(seed, kPermutation|s). p-value = (1 + #{null >=
/// observed}) / (1 + shuffles). A constant x or y has MI 0 under every
/// permutation, so p = 1 and no shuffling is done.
PermutationNull permutation_null(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                 std::uint64_t n_shuffles, std::uint64_t seed, const Execution& exec = {});

/// Single-stream front end: draws one sub-seed from rng and runs
/// permutation_null with it. Requires n_shuffles >= 1000.
double permutation_independence_test(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                     std::uint64_t n_shuffles, RngStream& rng, const Execution& exec = {});

/// Empirical quantile (linear interpolation), q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace collapsesim
