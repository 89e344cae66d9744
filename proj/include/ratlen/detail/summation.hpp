#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ratlen::detail {

// Pairwise summation. Fixed recursion structure, so a given sequence of
// addends always produces the same bits regardless of how it was generated.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n <= 8) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_sum(std::span<const std::complex<double>>(v));
}

} // namespace ratlen::detail
