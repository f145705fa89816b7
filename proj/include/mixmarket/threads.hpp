#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mixmarket {

/// Hardware concurrency capped by the MIXMARKET_THREADS environment
/// variable. Always at least 1.
int max_threads();

/// Runs fn(chunk_index, begin, end) over n_items split into n_chunks fixed
/// chunks. Chunk boundaries depend only on (n_items, n_chunks), so any
/// computation that writes per-chunk or per-index state is bit-identical
/// for every thread count. n_threads <= 0 selects max_threads().
void parallel_chunks(std::size_t n_items, std::size_t n_chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                     int n_threads = 0);

} // namespace mixmarket
