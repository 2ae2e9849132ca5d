#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace psmod1 {

/// Fixed chunk size for every ordered reduction in the library. Chunk
/// boundaries never depend on the worker count, so merged results are
/// bit-identical for any number of threads.
inline constexpr std::int64_t kChunkSize = std::int64_t{1} << 16;

/// Process-wide worker count; 0 selects std::thread::hardware_concurrency().
void set_worker_count(unsigned n);
unsigned worker_count();

/// Evaluates fn(lo, hi) on consecutive chunks of [begin, end) and returns the
/// per-chunk results in chunk order. The first exception (by chunk index) is
/// rethrown after all workers join.
template <class Fn>
auto map_chunks(std::int64_t begin, std::int64_t end, Fn&& fn,
                std::int64_t chunk = kChunkSize) {
    using Result = decltype(fn(begin, end));
    const std::int64_t span = std::max<std::int64_t>(0, end - begin);
    const std::int64_t count = (span + chunk - 1) / chunk;
    std::vector<Result> results(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));

    auto run = [&](std::int64_t i) {
        const std::int64_t lo = begin + i * chunk;
        const std::int64_t hi = std::min(end, lo + chunk);
        try {
            results[static_cast<std::size_t>(i)] = fn(lo, hi);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    };

    const auto workers = static_cast<std::int64_t>(
        std::min<std::int64_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) run(i);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (std::int64_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::int64_t i = next++; i < count; i = next++) run(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace psmod1
