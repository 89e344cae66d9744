#pragma once

#include <cmath>
#include <complex>

#include "ratlen/blaschke.hpp"
#include "ratlen/errors.hpp"

namespace ratlen {

/// Reproducing kernel of the model space K_B under the normalized circle
/// measure: k_w(z) = (1 - conj(B(w)) B(z)) / (1 - conj(w) z). At z = w the
/// formula evaluates to (1-|B(w)|^2)/(1-|w|^2), which is also the squared
/// K_B-norm of k_w.
inline cplx reproducing_kernel_eval(const BlaschkeProduct& B, cplx w, cplx z) {
    const cplx den = 1.0 - std::conj(w) * z;
    if (std::abs(den) < 1e-14)
        throw DegenerateDenominator("reproducing kernel undefined: |1 - conj(w) z| < 1e-14");
    return (1.0 - std::conj(B(w)) * B(z)) / den;
}

} // namespace ratlen
