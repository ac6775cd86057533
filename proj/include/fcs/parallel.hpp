#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fcs {

// Runs body(0..n-1) across a small thread pool. Each index owns its output
// slot, so results are identical to the serial order no matter how the
// indices are scheduled; reductions happen after the join, in index order.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (n < 2 || threads < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace fcs
