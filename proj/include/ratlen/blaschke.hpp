#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "ratlen/detail/moebius.hpp"
#include "ratlen/detail/summation.hpp"
#include "ratlen/errors.hpp"

namespace ratlen {

using cplx = std::complex<double>;

/// Finite Blaschke product given by its zero list. Each factor is
/// (conj(a)/|a|)(z-a)/(conj(a)z-1); a zero at the origin contributes the
/// factor z. Unimodular on the unit circle by construction; the empty
/// product is the constant 1.
class BlaschkeProduct {
public:
    BlaschkeProduct() = default;

    explicit BlaschkeProduct(std::vector<cplx> zeros) : zeros_(std::move(zeros)) {
        for (const cplx& a : zeros_)
            if (!(std::abs(a) < 1.0))
                throw MalformedFunction("Blaschke zeros must lie strictly inside the disk");
    }

    int degree() const { return static_cast<int>(zeros_.size()); }
    const std::vector<cplx>& zeros() const { return zeros_; }

    cplx operator()(cplx z) const { return value_and_derivative(z).first; }
    cplx derivative(cplx z) const { return value_and_derivative(z).second; }

    std::pair<cplx, cplx> value_and_derivative(cplx z) const {
        cplx value{1.0, 0.0};
        cplx deriv{0.0, 0.0};
        for (const cplx& a : zeros_) {
            if (a != cplx{0.0, 0.0} &&
                std::abs(z - 1.0 / std::conj(a)) <= pole_proximity_tol)
                throw PoleProximity("evaluation point within 1e-13 of a Blaschke pole");
            const auto [phi, phi_d] = detail::blaschke_factor(a, z);
            deriv = deriv * phi + value * phi_d;
            value = value * phi;
        }
        return {value, deriv};
    }

    /// |B'(zeta)| for |zeta| = 1 via the boundary identity
    /// |B'(zeta)| = sum_k (1-|z_k|^2)/|zeta - z_k|^2 (each factor of a
    /// unimodular product contributes the modulus of its own logarithmic
    /// derivative). Used as an independent oracle for derivative code.
    double boundary_derivative_modulus(cplx zeta) const {
        if (std::abs(std::abs(zeta) - 1.0) > 1e-9)
            throw MalformedFunction("boundary_derivative_modulus requires |zeta| = 1");
        std::vector<double> terms;
        terms.reserve(zeros_.size());
        for (const cplx& a : zeros_)
            terms.push_back((1.0 - std::norm(a)) / std::norm(zeta - a));
        return detail::pairwise_sum(terms);
    }

    static constexpr double pole_proximity_tol = 1e-13;

private:
    std::vector<cplx> zeros_;
};

} // namespace ratlen
