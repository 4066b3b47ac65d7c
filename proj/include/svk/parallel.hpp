#pragma once

#include <algorithm>
#include <cstdlib>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

namespace svk {

/// False when SVK_NO_PARALLEL=1 or only one hardware thread is available.
inline bool parallel_enabled()
{
    const char* env = std::getenv("SVK_NO_PARALLEL");
    if (env && std::string_view(env) == "1") return false;
    return std::thread::hardware_concurrency() > 1;
}

/// results[i] = f(i). Work is split into contiguous chunks across threads;
/// the result order never depends on scheduling. `f` must not throw.
template <class F>
auto map_indices(std::size_t count, F f) -> std::vector<std::invoke_result_t<F, std::size_t>>
{
    using R = std::invoke_result_t<F, std::size_t>;
    std::vector<R> out(count);
    const std::size_t workers =
        parallel_enabled() ? std::min<std::size_t>(count, std::thread::hardware_concurrency()) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&out, &f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
        });
    }
    return out;
}

}  // namespace svk
