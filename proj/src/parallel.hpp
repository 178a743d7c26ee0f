#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "topodyn/zoo.hpp"

namespace topodyn {

/// Runs fn(i) for every i in [0, count) across worker_count() threads.
/// Iterations are claimed in chunks from a shared counter, so execution
/// order is nondeterministic; callers keep determinism by writing results
/// into per-index slots and merging in index order afterwards.
template <typename Fn>
void parallel_for_index(std::uint64_t count, Fn&& fn) {
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count()),
                              count == 0 ? 1 : count);
  if (workers <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  constexpr std::uint64_t kChunk = 16;
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_lock;

  const auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t begin =
          next.fetch_add(kChunk, std::memory_order_relaxed);
      if (begin >= count) break;
      const std::uint64_t end = std::min(begin + kChunk, count);
      for (std::uint64_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_lock);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (std::uint64_t t = 0; t < workers; ++t) threads.emplace_back(work);
  for (auto& thread : threads) thread.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace topodyn
