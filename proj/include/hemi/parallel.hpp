// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hemi {

/// Available parallelism, at least 1.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Calls f(begin, end, shard) on `shards` contiguous blocks of [0, n), one thread per block.
/// The first exception thrown by any block is rethrown.
template <class F>
void parallel_blocks(std::size_t n, unsigned shards, F&& f) {
  shards = std::max(1u, shards);
  if (shards == 1 || n < shards) {
    f(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(shards);
  const std::size_t step = (n + shards - 1) / shards;
  for (unsigned w = 0; w < shards; ++w) {
    const std::size_t b = std::min(n, w * step), e = std::min(n, b + step);
    pool.emplace_back([&, b, e, w] {
      try {
        f(b, e, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hemi
