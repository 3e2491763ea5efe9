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

// Block-partitioned execution of Monte Carlo kernels.
//
// Work of n items is cut into fixed-size blocks; block b always draws from
// its own RngStream (seed, domain|b). Block results are stored by index and
// summed in block order, so the totals are bit-identical between the serial
// reference driver and the OpenMP driver, for any worker count.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <utility>
#include <vector>

namespace collapsesim {

struct Execution {
  int workers = 1;
};

inline constexpr std::uint64_t kDefaultBlockSize = std::uint64_t{1} << 14;

inline std::uint64_t block_count(std::uint64_t n_items, std::uint64_t block_size) {
  return (n_items + block_size - 1) / block_size;
}

namespace reference {

/// Serial driver: evaluates kernel(block) for block = 0..n_blocks-1 in order.
template <class R, class Kernel>
std::vector<R> map_blocks(std::uint64_t n_blocks, Kernel&& kernel) {
  std::vector<R> out;
  out.reserve(n_blocks);
  for (std::uint64_t b = 0; b < n_blocks; ++b) out.push_back(kernel(b));
  return out;
}

}  // namespace reference

/// OpenMP driver. Falls back to the serial reference for a single worker.
template <class R, class Kernel>
std::vector<R> map_blocks(std::uint64_t n_blocks, const Execution& exec, Kernel&& kernel) {
  if (exec.workers <= 1 || n_blocks <= 1) {
    return reference::map_blocks<R>(n_blocks, std::forward<Kernel>(kernel));
  }
  std::vector<R> out(n_blocks);
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(exec.workers)
  for (std::int64_t b = 0; b < n; ++b) {
    try {
      out[static_cast<std::size_t>(b)] = kernel(static_cast<std::uint64_t>(b));
    } catch (...) {
#pragma omp critical(collapsesim_map_blocks_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Maps blocks and sums the per-block accumulators in block order.
template <class R, class Kernel>
R reduce_blocks(std::uint64_t n_blocks, const Execution& exec, Kernel&& kernel) {
  R total{};
  for (const R& part : map_blocks<R>(n_blocks, exec, std::forward<Kernel>(kernel))) total += part;
  return total;
}

}  // namespace collapsesim
