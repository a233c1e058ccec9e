#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace diffmat {

// Worker count: DIFFMAT_THREADS if set, otherwise the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("DIFFMAT_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 1024) return static_cast<unsigned>(n);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1u : hc;
}

/// Runs fn(chunk_id) for every chunk id in [0, n_chunks).  Results must be
/// keyed by chunk id; the dispatch order is unspecified, so fn must not
/// depend on it.
template <typename Fn>
void parallel_chunks(std::uint64_t n_chunks, Fn&& fn, unsigned workers = 0) {
    if (n_chunks == 0) return;
    if (workers == 0) workers = worker_count();
    if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
                if (c >= n_chunks) return;
                try {
                    fn(c);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// Sums partials by folding the upper half onto the lower half until one
/// value remains.  The combine order depends only on the partial count, never
/// on how the partials were produced, so parallel runs reduce bit-exactly.
template <typename T>
T pairwise_sum(std::vector<T> parts) {
    if (parts.empty()) return T{};
    std::size_t n = parts.size();
    while (n > 1) {
        const std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) parts[i] += parts[i + half];
        n = half;
    }
    return parts[0];
}

}  // namespace diffmat
