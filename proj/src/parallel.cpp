#include "ssguard/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ssguard {

unsigned worker_count() {
    static const unsigned cached = [] {
        unsigned n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("SSGUARD_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
        }
        return n;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
    if (n == 0) return;
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        chunk_fn(0, n);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b = n * w / workers;
        const std::size_t e = n * (w + 1) / workers;
        futs.push_back(std::async(std::launch::async, [&, b, e] { chunk_fn(b, e); }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace ssguard
