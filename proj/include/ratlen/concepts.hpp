#pragma once

#include <complex>
#include <concepts>
#include <functional>

namespace ratlen {

using cplx = std::complex<double>;

/// Anything that can be evaluated at a point of the closed unit disk.
template <typename F>
concept PointMap = requires(const F& f, cplx z) {
    { f(z) } -> std::convertible_to<cplx>;
};

/// A point map that also exposes an analytic (non-finite-difference) derivative.
template <typename F>
concept AnalyticMap = PointMap<F> && requires(const F& f, cplx z) {
    { f.derivative(z) } -> std::convertible_to<cplx>;
};

/// Adapter turning a pair of callables into an AnalyticMap.
struct CallableMap {
    std::function<cplx(cplx)> eval;
    std::function<cplx(cplx)> deriv;

    cplx operator()(cplx z) const { return eval(z); }
    cplx derivative(cplx z) const { return deriv(z); }
};

} // namespace ratlen
