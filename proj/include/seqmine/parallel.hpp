#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace seqmine {

/// Runs fn(i) for i in [0, n) on `threads` workers. Each index is processed
/// exactly once and writes only its own outputs, so results are identical
/// for any worker count; reductions belong to the caller, in index order.
/// If several indices throw, the exception of the smallest index is
/// rethrown, keeping error reports scheduling-independent.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_error{std::numeric_limits<std::size_t>::max()};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n || i > first_error.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < first_error.load(std::memory_order_relaxed)) {
                    first_error.store(i, std::memory_order_relaxed);
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace seqmine
