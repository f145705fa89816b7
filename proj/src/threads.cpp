#include "mixmarket/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace mixmarket {

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* cap = std::getenv("MIXMARKET_THREADS")) {
        try {
            const int limit = std::stoi(cap);
            if (limit >= 1) hw = std::min(hw, limit);
        } catch (...) {
            // unparsable value: ignore the cap
        }
    }
    return hw;
}

void parallel_chunks(std::size_t n_items, std::size_t n_chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                     int n_threads) {
    if (n_items == 0) return;
    n_chunks = std::max<std::size_t>(1, std::min(n_chunks, n_items));
    auto chunk_begin = [&](std::size_t c) { return c * n_items / n_chunks; };

    int workers = n_threads <= 0 ? max_threads() : std::min(n_threads, max_threads());
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n_chunks));

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c, chunk_begin(c), chunk_begin(c + 1));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                fn(c, chunk_begin(c), chunk_begin(c + 1));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace mixmarket
