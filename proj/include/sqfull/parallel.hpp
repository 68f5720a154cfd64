#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqfull {

/// Worker count from SQFULL_THREADS, else hardware concurrency.
inline unsigned default_threads()
{
    if (const char* env = std::getenv("SQFULL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for every chunk index in [0, chunks) on up to `threads`
/// workers and returns the results ordered by chunk index. Output never
/// depends on the worker count.
template <typename Fn>
auto parallel_chunks(std::size_t chunks, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> results(chunks);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
    if (workers <= 1) {
        for (std::size_t i = 0; i < chunks; ++i)
            results[i] = fn(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < chunks; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

}  // namespace sqfull
