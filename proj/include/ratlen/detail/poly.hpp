#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Dense polynomial helpers over complex coefficients in ascending power order.
// Everything here is exact symbolic manipulation (convolutions, Horner), never
// root-finding.

namespace ratlen::detail {

using cplx = std::complex<double>;
using Poly = std::vector<cplx>;

inline void poly_trim(Poly& p) {
    while (p.size() > 1 && p.back() == cplx{0.0, 0.0}) p.pop_back();
    if (p.empty()) p.push_back({0.0, 0.0});
}

inline cplx poly_eval(const Poly& p, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

inline Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return Poly{cplx{0.0, 0.0}};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        d[i - 1] = static_cast<double>(i) * p[i];
    return d;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly poly_scale(const Poly& a, cplx s) {
    Poly r(a);
    for (auto& c : r) c *= s;
    return r;
}

/// Truncated product keeping coefficients of z^0..z^max_degree only.
inline Poly poly_mul_truncated(const Poly& a, const Poly& b, std::size_t max_degree) {
    Poly r(std::min(a.size() + b.size() - 1, max_degree + 1), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.size() && i <= max_degree; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= max_degree; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

inline std::size_t poly_degree(const Poly& p) {
    std::size_t d = p.size();
    while (d > 1 && p[d - 1] == cplx{0.0, 0.0}) --d;
    return d - 1;
}

} // namespace ratlen::detail
