#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace srglab {

/// Worker cap: SRG_LAB_THREADS when set, otherwise hardware concurrency.
inline int max_threads() {
    if (const char* env = std::getenv("SRG_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run f(i) for i in [0, n). Each index must write only to its own slot so
/// that parallel and serial runs produce identical results. `threads` <= 0
/// means use max_threads().
template <typename F>
void parallel_for(std::size_t n, F&& f, int threads = 0) {
    if (threads <= 0) threads = max_threads();
    threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::mutex error_mutex;
    std::exception_ptr first_error;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = static_cast<std::size_t>(w); i < n;
                 i += static_cast<std::size_t>(threads)) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace srglab
