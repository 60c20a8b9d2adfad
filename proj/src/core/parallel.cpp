#include "relight/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace relight {

namespace {

std::atomic<int> g_thread_limit{0};

int resolved_threads() {
    const int limit = g_thread_limit.load();
    if (limit > 0) return limit;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void set_thread_limit(int threads) { g_thread_limit.store(std::max(0, threads)); }

int thread_limit() { return resolved_threads(); }

void parallel_rows(int rows, const std::function<void(int)>& body) {
    if (rows <= 0) return;
    // Small jobs are not worth a thread spawn.
    const int workers = std::min(resolved_threads(), std::max(1, rows / 16));
    if (workers <= 1) {
        for (int y = 0; y < rows; ++y) body(y);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int block = (rows + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * block;
        const int end = std::min(rows, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (int y = begin; y < end; ++y) body(y);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace relight
