#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace minkabs {

template <class Body>
void parallel_chunks(std::size_t n, Body&& body)
{
    const std::size_t threads = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(1, n / 4096));
    if (threads <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

} // namespace minkabs
