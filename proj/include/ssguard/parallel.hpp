#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace ssguard {

/// Worker-count cap: min(hardware_concurrency, SSGUARD_THREADS).
unsigned worker_count();

/// Runs f(i) for i in [0, n), split into contiguous chunks across workers.
/// Callers guarantee f touches no shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk_fn);

template <class F>
void parallel_for_each(std::size_t n, F&& f) {
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) f(i);
    });
}

/// Deterministic map-reduce: the index range is split into a fixed number of
/// chunks (independent of the worker count) and partial results are combined
/// in chunk order, so the result does not depend on scheduling.
template <class T, class MapChunk, class Combine>
T parallel_reduce(std::size_t n, T init, MapChunk&& map_chunk, Combine&& combine) {
    if (n == 0) return init;
    const std::size_t nchunks = std::min<std::size_t>(64, n);
    std::vector<T> partial(nchunks, init);
    parallel_for(nchunks, [&](std::size_t cb, std::size_t ce) {
        for (std::size_t c = cb; c < ce; ++c) {
            const std::size_t b = n * c / nchunks;
            const std::size_t e = n * (c + 1) / nchunks;
            partial[c] = map_chunk(b, e);
        }
    });
    T acc = init;
    for (const T& p : partial) acc = combine(acc, p);
    return acc;
}

}  // namespace ssguard
