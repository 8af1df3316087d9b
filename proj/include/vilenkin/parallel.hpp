#pragma once

// Deterministic work splitting.  Tasks write to preallocated disjoint slots
// keyed by index, so the result is identical whatever the thread count;
// threads only change wall time.

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

inline unsigned effective_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls fn(i) for every i in [begin, end), split into contiguous blocks
/// across `threads` workers.  With threads <= 1 this is a plain loop.
template <typename Fn>
void parallel_for(index_t begin, index_t end, unsigned threads, Fn&& fn) {
    const index_t count = end - begin;
    if (count <= 0) return;
    threads = effective_threads(threads);
    if (threads <= 1 || count == 1) {
        for (index_t i = begin; i < end; ++i) fn(i);
        return;
    }
    if (static_cast<index_t>(threads) > count) threads = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex error_mu;
    for (unsigned t = 0; t < threads; ++t) {
        const index_t lo = begin + count * t / threads;
        const index_t hi = begin + count * (t + 1) / threads;
        pool.emplace_back([&, lo, hi] {
            try {
                for (index_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace vilenkin
