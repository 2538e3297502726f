#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace kseries::detail {

/// Applies fn to every input on a few worker threads; results keep input order.
/// The first exception thrown by fn is rethrown to the caller.
template <class T, class Fn>
auto ordered_parallel_map(const std::vector<T>& inputs, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const T&>>
{
    using R = std::invoke_result_t<Fn&, const T&>;
    const std::size_t n = inputs.size();
    std::vector<R> out(n);
    if (n == 0)
        return out;
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(n, 8));

    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers)
                out[i] = fn(inputs[i]);
        }));
    }
    for (auto& j : jobs)
        j.get();
    return out;
}

} // namespace kseries::detail
