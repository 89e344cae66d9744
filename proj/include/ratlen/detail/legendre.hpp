#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace ratlen::detail {

inline std::vector<std::pair<double, double>>
sorted_by_node(std::vector<std::pair<double, double>> nw) {
    // insertion sort: keep node order ascending so summation order is fixed
    for (std::size_t i = 1; i < nw.size(); ++i)
        for (std::size_t j = i; j > 0 && nw[j].first < nw[j - 1].first; --j)
            std::swap(nw[j], nw[j - 1]);
    return nw;
}

/// Gauss-Legendre nodes and weights on [-1, 1] for arbitrary order, computed
/// by Newton iteration on the three-term recurrence (no hardcoded tables).
inline std::vector<std::pair<double, double>> gauss_legendre(std::size_t order) {
    const int n = static_cast<int>(order);
    std::vector<std::pair<double, double>> nw(order);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // recompute the derivative at the converged node for the weight
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nw[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return sorted_by_node(std::move(nw));
}

/// Shared 16-point rule used by the recursive panel integrator.
inline const std::vector<std::pair<double, double>>& gauss_legendre_16() {
    static const std::vector<std::pair<double, double>> table = gauss_legendre(16);
    return table;
}

} // namespace ratlen::detail
