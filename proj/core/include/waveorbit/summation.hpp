#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace waveorbit {

// Pairwise (cascade) summation: deterministic reduction order regardless of
// threading, and O(eps*log n) roundoff instead of O(eps*n).
template <class T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n <= 64) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum<T>(v.subspan(0, half)) + pairwise_sum<T>(v.subspan(half));
}

// Sums f(i) for i in [0, n) with the same cascade order as pairwise_sum.
template <class F>
auto pairwise_sum_indexed(std::size_t begin, std::size_t end, F&& f) -> decltype(f(std::size_t{})) {
    const std::size_t n = end - begin;
    if (n <= 64) {
        decltype(f(std::size_t{})) acc{};
        for (std::size_t i = begin; i < end; ++i) acc += f(i);
        return acc;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum_indexed(begin, mid, f) + pairwise_sum_indexed(mid, end, f);
}

}  // namespace waveorbit
