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

#include "collapsesim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace collapsesim {

double normal_quantile(double p) { return boost::math::quantile(boost::math::normal(), p); }

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("wilson_interval: confidence must lie in (0, 1)");
  }
  const double z = normal_quantile(0.5 + 0.5 * confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval ci{center - half, center + half};
  if (successes == 0) ci.lo = 0.0;
  if (successes == trials) ci.hi = 1.0;
  ci.lo = std::clamp(ci.lo, 0.0, p);
  ci.hi = std::clamp(ci.hi, p, 1.0);
  return ci;
}

BinomialEstimate BinomialEstimate::from_counts(std::uint64_t successes, std::uint64_t trials) {
  BinomialEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.ci95 = wilson_interval(successes, trials);
  e.point = static_cast<double>(successes) / static_cast<double>(trials);
  return e;
}

double binomial_sigma(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double binomial_z(std::uint64_t successes, std::uint64_t n, double p) {
  const double diff = static_cast<double>(successes) / static_cast<double>(n) - p;
  const double sigma = binomial_sigma(p, n);
  if (sigma == 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return diff / sigma;
}

double two_proportion_z(std::uint64_t s1, std::uint64_t n1, std::uint64_t s2, std::uint64_t n2) {
  const double f1 = static_cast<double>(s1) / static_cast<double>(n1);
  const double f2 = static_cast<double>(s2) / static_cast<double>(n2);
  if (f1 == f2) return 0.0;
  const double pooled = static_cast<double>(s1 + s2) / static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  return (f1 - f2) / se;
}

Contingency contingency(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw std::invalid_argument("contingency: length mismatch");
  Contingency t;
  for (std::size_t i = 0; i < x.size(); ++i) ++t.counts[2 * (x[i] & 1u) + (y[i] & 1u)];
  return t;
}

double plugin_mutual_information(const Contingency& table) {
  const double n = static_cast<double>(table.n());
  if (n == 0.0) return 0.0;
  const double px[2] = {static_cast<double>(table.n() - table.x_ones()) / n, static_cast<double>(table.x_ones()) / n};
  const double py[2] = {static_cast<double>(table.n() - table.y_ones()) / n, static_cast<double>(table.y_ones()) / n};
  double mi = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double pxy = static_cast<double>(table.counts[2 * x + y]) / n;
      if (pxy > 0.0) mi += pxy * std::log2(pxy / (px[x] * py[y]));
    }
  }
  return std::max(mi, 0.0);
}

double mutual_information_stderr(const Contingency& table) {
  const double n = static_cast<double>(table.n());
  if (n < 2.0) return 0.0;
  const double px[2] = {static_cast<double>(table.n() - table.x_ones()) / n, static_cast<double>(table.x_ones()) / n};
  const double py[2] = {static_cast<double>(table.n() - table.y_ones()) / n, static_cast<double>(table.y_ones()) / n};
  double mean = 0.0;
  double second = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double pxy = static_cast<double>(table.counts[2 * x + y]) / n;
      if (pxy == 0.0) continue;
      const double density = std::log2(pxy / (px[x] * py[y]));
      mean += pxy * density;
      second += pxy * density * density;
    }
  }
  const double var = std::max(second - mean * mean, 0.0) * n / (n - 1.0);
  return std::sqrt(var / n);
}

PermutationNull permutation_null(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                 std::uint64_t n_shuffles, std::uint64_t seed, const Execution& exec) {
  const Contingency observed_table = contingency(x, y);
  PermutationNull out;
  out.observed = plugin_mutual_information(observed_table);
  out.n_shuffles = n_shuffles;
  const std::uint64_t n = observed_table.n();
  const bool degenerate = observed_table.x_ones() == 0 || observed_table.x_ones() == n ||
                          observed_table.y_ones() == 0 || observed_table.y_ones() == n;
  if (degenerate) {
    out.null_mi.assign(n_shuffles, 0.0);
    out.p_value = 1.0;
    return out;
  }

  out.null_mi = map_blocks<double>(n_shuffles, exec, [&](std::uint64_t s) {
    RngStream rng(seed, domain_stream(StreamDomain::kPermutation, s));
    std::vector<std::uint8_t> shuffled(y.begin(), y.end());
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      std::swap(shuffled[i], shuffled[rng.uniform_below(i + 1)]);
    }
    return plugin_mutual_information(contingency(x, shuffled));
  });

  // Ties in MI are common (it only depends on n11 once the marginals are fixed);
  // the relative slack keeps rounding from splitting them.
  const double threshold = out.observed * (1.0 - 1e-12);
  const auto at_least = static_cast<double>(
      std::count_if(out.null_mi.begin(), out.null_mi.end(), [&](double v) { return v >= threshold; }));
  out.p_value = (1.0 + at_least) / (1.0 + static_cast<double>(n_shuffles));
  return out;
}

double permutation_independence_test(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                     std::uint64_t n_shuffles, RngStream& rng, const Execution& exec) {
  if (x.size() != y.size()) throw std::invalid_argument("permutation_independence_test: length mismatch");
  if (n_shuffles < 1000) throw std::invalid_argument("permutation_independence_test: need at least 1000 shuffles");
  return permutation_null(x, y, n_shuffles, rng.next_u64(), exec).p_value;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace collapsesim
