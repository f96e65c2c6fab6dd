// Copyright 2026 The scfv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Chunked parallel scans whose results do not depend on the schedule.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace scfv {

// Worker count from SCFV_PARALLELISM, else 1.
inline unsigned default_parallelism() {
  if (const char* env = std::getenv("SCFV_PARALLELISM")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    } catch (...) {
    }
  }
  return 1;
}

namespace detail {

inline std::uint64_t chunk_size_for(std::uint64_t count, unsigned workers) {
  const std::uint64_t target = std::uint64_t{workers} * 16;
  return std::max<std::uint64_t>(1, (count + target - 1) / target);
}

// Runs body(begin, end) over [0, count) split into chunks handed out in
// increasing order. `skip(begin)` lets a body refuse a chunk outright.
template <class Body, class Skip>
void run_chunks(std::uint64_t count, unsigned workers, Body&& body, Skip&& skip) {
  if (count == 0) return;
  workers = std::max(1u, workers);
  const std::uint64_t chunk = detail::chunk_size_for(count, workers);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      while (true) {
        const std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= count) return;
        if (skip(begin)) continue;
        body(begin, std::min(count, begin + chunk));
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Calls body(begin, end) on disjoint chunks covering [0, count).
template <class Body>
void parallel_for(std::uint64_t count, unsigned workers, Body&& body) {
  detail::run_chunks(count, workers, body, [](std::uint64_t) { return false; });
}

// Finds, for each of K channels, the least index i in [0, count) at which
// `probe` reports a hit. `probe(i, wanted)` returns std::array<optional<R>, K>;
// `wanted[c]` is false once channel c already has a hit below i. The result
// is the canonical minimum regardless of the worker count.
template <std::size_t K, class R, class Probe>
std::array<std::optional<std::pair<std::uint64_t, R>>, K> find_first_hits(
    std::uint64_t count, unsigned workers, Probe&& probe) {
  std::array<std::atomic<std::uint64_t>, K> best;
  for (auto& b : best) b.store(count);
  std::array<std::optional<std::pair<std::uint64_t, R>>, K> result;
  std::mutex result_mutex;

  auto all_settled_below = [&](std::uint64_t i) {
    for (auto& b : best)
      if (b.load(std::memory_order_relaxed) > i) return false;
    return true;
  };

  detail::run_chunks(
      count, workers,
      [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
          std::array<bool, K> wanted;
          bool any = false;
          for (std::size_t c = 0; c < K; ++c) {
            wanted[c] = best[c].load(std::memory_order_relaxed) > i;
            any = any || wanted[c];
          }
          if (!any) return;
          auto hits = probe(i, wanted);
          for (std::size_t c = 0; c < K; ++c) {
            if (!wanted[c] || !hits[c]) continue;
            std::lock_guard lock(result_mutex);
            if (!result[c] || i < result[c]->first) {
              result[c].emplace(i, std::move(*hits[c]));
              std::uint64_t cur = best[c].load();
              while (i < cur && !best[c].compare_exchange_weak(cur, i)) {
              }
            }
          }
        }
      },
      all_settled_below);
  return result;
}

// Single-channel convenience wrapper.
template <class R, class Probe>
std::optional<std::pair<std::uint64_t, R>> find_first(std::uint64_t count, unsigned workers,
                                                      Probe&& probe) {
  auto hits = find_first_hits<1, R>(count, workers,
                                    [&](std::uint64_t i, const std::array<bool, 1>&) {
                                      return std::array<std::optional<R>, 1>{probe(i)};
                                    });
  return std::move(hits[0]);
}

}  // namespace scfv
