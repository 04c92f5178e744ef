#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ficogarch {

/// Runs fn(i) for i in [0, n) across hardware threads. Work items must be
/// independent; results should be written to pre-sized slots so the outcome
/// does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned max_threads = 0) {
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw < 2 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (hw > n) hw = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(hw);
    for (unsigned t = 0; t < hw; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += hw) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ficogarch
