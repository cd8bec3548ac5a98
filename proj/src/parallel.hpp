#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace page::detail {

// Runs fn(0..n-1) across a small worker pool. Tasks must be independent;
// the first exception thrown is rethrown on the calling thread after all
// workers join. max_workers <= 0 means one per hardware thread.
inline void parallel_for(int n, const std::function<void(int)>& fn, int max_workers = 0) {
    if (n <= 0) {
        return;
    }
    if (max_workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        max_workers = static_cast<int>(hw == 0 ? 1 : hw);
    }
    const int workers = std::min(n, max_workers);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace page::detail
