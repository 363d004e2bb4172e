#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gaf {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Splits [0, count) into one contiguous chunk per worker and runs
// body(lo, hi) on each. Callers must write results into per-index slots (or
// other order-insensitive storage) so the outcome is independent of the
// worker count.
inline void parallel_chunks(std::uint64_t count, unsigned threads,
                            const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    const unsigned t = resolve_threads(threads);
    if (t <= 1 || count < 2) {
        if (count > 0) body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned w = 0; w < t; ++w) {
        const std::uint64_t lo = count * w / t;
        const std::uint64_t hi = count * (w + 1) / t;
        pool.emplace_back([&, lo, hi] {
            try {
                if (lo < hi) body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gaf
