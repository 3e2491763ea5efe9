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

#include <array>
#include <cstdint>
#include <string_view>

namespace collapsesim {

/// One round-trip of the Philox4x32-10 block function (Salmon et al., SC'11).
/// Exposed so the known-answer vectors can be checked directly.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Deterministic counter-based random stream.
///
/// The 64-bit seed is the Philox key. The 128-bit counter is split into a
/// 64-bit stream index (high half) and a 64-bit block counter (low half), so
/// every (seed, stream index) pair addresses a disjoint, reproducible sequence
/// on every platform. Floating-point draws never go through <random>
/// distributions, whose output is implementation-defined.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "philox4x32-10";

  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }
  std::string_view algorithm() const { return kAlgorithm; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

RngStream stream_from_seed(std::uint64_t seed, std::uint64_t index);

/// Stream indices are namespaced: the top 16 bits name the consumer, the low
/// 48 bits the partition (block, shuffle, ...) within it.
enum class StreamDomain : std::uint16_t {
  kGeneral = 0,
  kCascade = 1,
  kCorrelation = 2,
  kChsh = 3,  // kChsh + term (0..3)
  kNoSignal = 8,
  kProtocolBits = 9,
  kProtocolEncode = 10,
  kProtocolReceive = 11,
  kPermutation = 12,
  kMziDetect = 13,
  kMziChoice = 14,
  kSeedDerivation = 15,
};

constexpr std::uint64_t domain_stream(StreamDomain domain, std::uint64_t sub) {
  return (static_cast<std::uint64_t>(domain) << 48) | (sub & ((std::uint64_t{1} << 48) - 1));
}

constexpr std::uint64_t domain_stream(StreamDomain domain, std::uint16_t offset, std::uint64_t sub) {
  return domain_stream(static_cast<StreamDomain>(static_cast<std::uint16_t>(domain) + offset), sub);
}

/// Derives an independent seed from (seed, salt); used where one experiment
/// needs reference runs that must not share streams with the main run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace collapsesim
