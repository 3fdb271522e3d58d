#pragma once

#include <future>
#include <vector>

namespace expzero {

// Applies f to each item, possibly concurrently, and returns the results in
// input order. The output is identical for every thread count; threads only
// change the wall-clock schedule.
template <typename In, typename F>
auto parallel_map_ordered(const std::vector<In>& items, unsigned threads, F f)
    -> std::vector<decltype(f(items[0]))> {
    using Out = decltype(f(items[0]));
    std::vector<Out> out;
    out.reserve(items.size());
    if (threads <= 1 || items.size() <= 1) {
        for (const In& item : items) out.push_back(f(item));
        return out;
    }
    std::vector<std::future<Out>> futures;
    futures.reserve(items.size());
    for (const In& item : items)
        futures.push_back(std::async(std::launch::async, [&f, &item] { return f(item); }));
    for (auto& fut : futures) out.push_back(fut.get());
    return out;
}

}  // namespace expzero
