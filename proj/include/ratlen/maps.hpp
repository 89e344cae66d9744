#pragma once

#include <complex>
#include <vector>

#include "ratlen/concepts.hpp"

namespace ratlen {

/// Koebe function z/(1-z)^2, the growth-extremal schlicht map; its derivative
/// concentrates at z = 1, so its integral means exponent at t = 1 is 2.
struct KoebeMap {
    cplx operator()(cplx z) const {
        const cplx d = 1.0 - z;
        return z / (d * d);
    }
    cplx derivative(cplx z) const {
        const cplx d = 1.0 - z;
        return (1.0 + z) / (d * d * d);
    }
};

/// Bounded univalent Moebius map z/(2-z); the derivative stays bounded on the
/// closed disk, so every integral means exponent vanishes.
struct MobiusMap {
    cplx operator()(cplx z) const { return z / (2.0 - z); }
    cplx derivative(cplx z) const {
        const cplx d = 2.0 - z;
        return 2.0 / (d * d);
    }
};

/// First n Taylor coefficients of the Koebe function (a_1 first): a_j = j.
inline std::vector<cplx> koebe_coefficients(int n) {
    std::vector<cplx> c(static_cast<std::size_t>(n > 0 ? n : 0));
    for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(j - 1)] = cplx{static_cast<double>(j), 0.0};
    return c;
}

} // namespace ratlen
