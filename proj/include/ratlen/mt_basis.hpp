#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ratlen/detail/moebius.hpp"
#include "ratlen/errors.hpp"

namespace ratlen {

using cplx = std::complex<double>;

namespace detail {

inline void validate_mt_points(const std::vector<cplx>& points) {
    for (const cplx& a : points)
        if (!(std::abs(a) < 1.0))
            throw MalformedFunction("basis points must lie strictly inside the disk");
}

} // namespace detail

/// All Malmquist-Takenaka basis values e_1(z)..e_m(z) for the given point
/// sequence, computed in one incremental pass:
/// e_k(z) = sqrt(1-|a_k|^2) B_{k-1}(z) / (1 - conj(a_k) z), B_0 = 1.
/// Orthonormal on the circle under the normalized measure dm = |dz|/2pi.
inline std::vector<cplx> mt_basis_values(const std::vector<cplx>& points, cplx z) {
    detail::validate_mt_points(points);
    std::vector<cplx> values;
    values.reserve(points.size());
    cplx blaschke{1.0, 0.0};
    for (const cplx& a : points) {
        const cplx den = 1.0 - std::conj(a) * z;
        if (den == cplx{0.0, 0.0})
            throw PoleProximity("evaluation point coincides with a basis pole");
        values.push_back(std::sqrt(1.0 - std::norm(a)) * blaschke / den);
        blaschke *= detail::blaschke_factor(a, z).value;
    }
    return values;
}

/// e_k(z) for a single 1-based index k.
inline cplx mt_basis_eval(const std::vector<cplx>& points, std::size_t k, cplx z) {
    if (k < 1 || k > points.size())
        throw IndexOutOfRange("Malmquist-Takenaka index must satisfy 1 <= k <= m");
    detail::validate_mt_points(points);
    cplx blaschke{1.0, 0.0};
    for (std::size_t j = 0; j + 1 < k; ++j)
        blaschke *= detail::blaschke_factor(points[j], z).value;
    const cplx a = points[k - 1];
    const cplx den = 1.0 - std::conj(a) * z;
    if (den == cplx{0.0, 0.0})
        throw PoleProximity("evaluation point coincides with a basis pole");
    return std::sqrt(1.0 - std::norm(a)) * blaschke / den;
}

} // namespace ratlen
