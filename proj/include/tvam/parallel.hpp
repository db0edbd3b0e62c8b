#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tvam {

// Runs fn(i) for i in [0, n) on up to `threads` workers pulling from a shared
// counter. Each index is processed exactly once; callers own output slots per
// index, so results are deterministic regardless of scheduling.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int k = int(std::min<std::size_t>(threads, n));
    pool.reserve(k);
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace tvam
