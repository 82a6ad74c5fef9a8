#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zerolab::detail {

// Runs body(chunk) for chunk in [0, chunks) on up to `workers` threads.
// Chunks are claimed dynamically; callers must write results into
// per-chunk slots so the merged output does not depend on scheduling.
template <typename Body>
void parallel_chunks(std::size_t chunks, unsigned workers, Body&& body) {
    if (chunks == 0) return;
    const std::size_t threads = std::min<std::size_t>(workers == 0 ? 1 : workers, chunks);
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks) return;
            try {
                body(c);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace zerolab::detail
