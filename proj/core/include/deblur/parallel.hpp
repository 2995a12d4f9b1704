#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace deblur {

/// Worker count: hardware concurrency, capped by DEBLUR_THREADS when set.
int worker_count();

/// Runs fn(i) for i in [begin, end) on up to worker_count() threads.
/// Work is split into contiguous blocks; fn must not touch shared mutable state.
template <typename Fn>
void parallel_for(int begin, int end, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            const int lo = begin + static_cast<int>(static_cast<long long>(n) * w / workers);
            const int hi = begin + static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
            pool.emplace_back([&, lo, hi] {
                try {
                    for (int i = lo; i < hi; ++i) fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace deblur
