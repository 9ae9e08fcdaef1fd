#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lmgraph {

// Runs fn(0..count-1) with at most `concurrency` worker threads. Work items
// are claimed from an atomic counter; the first exception is rethrown after
// all workers join. concurrency <= 1 runs inline.
inline void parallel_for(std::size_t count, int concurrency,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (concurrency <= 1 || count == 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }

    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(concurrency), count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (true) {
            std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
            if (k >= count) return;
            try {
                fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();

    if (first_error) std::rethrow_exception(first_error);
}

inline int default_concurrency() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 4 : static_cast<int>(hw);
}

} // namespace lmgraph
