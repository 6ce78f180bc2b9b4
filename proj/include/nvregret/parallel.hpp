#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nvregret {

// Runs fn(i) for every i in [0, count) across hardware threads.
//
// Callers must keep writes disjoint (one output slot per index) so that the
// result does not depend on scheduling; reductions are then performed by the
// caller in fixed index order.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& fn,
                         unsigned max_threads = 0) {
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw < 2 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned nt = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                // keep draining indices so siblings terminate quickly
                next.store(count);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace nvregret
