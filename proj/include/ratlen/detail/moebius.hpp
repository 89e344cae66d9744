#pragma once

#include <cmath>
#include <complex>

namespace ratlen::detail {

using cplx = std::complex<double>;

/// One normalized Blaschke factor (conj(a)/|a|) * (z - a)/(conj(a) z - 1),
/// together with its derivative. The factor for a zero at the origin is z.
struct BlaschkeFactor {
    cplx value;
    cplx derivative;
};

inline BlaschkeFactor blaschke_factor(cplx a, cplx z) {
    const double mod = std::abs(a);
    if (mod == 0.0) return {z, cplx{1.0, 0.0}};
    const cplx u = std::conj(a) / mod;
    const cplx den = std::conj(a) * z - 1.0;
    return {u * (z - a) / den, u * (mod * mod - 1.0) / (den * den)};
}

} // namespace ratlen::detail
