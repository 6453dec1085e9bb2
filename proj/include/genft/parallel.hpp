#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace genft {

/// 0 selects the hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(in[i]) evaluated on up to `threads` workers; the output order never depends on scheduling.
/// The first exception (by index) is rethrown after all workers finish.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn, unsigned threads = 0) {
    using R = decltype(fn(in.front()));
    std::vector<R> out(in.size());
    std::vector<std::exception_ptr> errors(in.size());
    const unsigned workers = std::min<unsigned>(resolve_threads(threads), std::max<std::size_t>(in.size(), 1));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < in.size(); i = next++) {
            try {
                out[i] = fn(in[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace genft
