// parallel.hpp - Deterministic data-parallel map over an index range

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace dicke {

inline constexpr const char* kWorkersEnv = "DICKE_WORKERS";

// Worker count from DICKE_WORKERS, else hardware concurrency
inline int default_workers() {
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            const int n = std::stoi(env);
            if (n > 0)
                return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluates fn(i) for i in [0, n) and returns results in index order. If any
// call throws, the exception of the lowest failing index is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, int workers = 0) {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 0)
        workers = default_workers();
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);

    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (nthreads <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back(body);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace dicke
