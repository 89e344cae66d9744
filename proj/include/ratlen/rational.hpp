#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ratlen/detail/moebius.hpp"
#include "ratlen/detail/poly.hpp"
#include "ratlen/errors.hpp"

namespace ratlen {

using cplx = std::complex<double>;

enum class RationalForm {
    PoleBasis,  // a + sum c_k sqrt(1-|a_k|^2) B_{k-1}(z) / (1 - conj(a_k) z)
    PolyRatio,  // P(z) / Q(z), coefficients in ascending power order
    TaylorPoly, // P(z), denominator identically 1
};

/// A rational map of the disk in one of three exact structured forms.
///
/// Values are immutable after construction; evaluation and differentiation are
/// pure and safe to call concurrently. Derivatives are always analytic
/// (product/quotient rules on the structure), never finite differences.
class RationalFunction {
public:
    static constexpr double pole_proximity_tol = 1e-13;

    static RationalFunction pole_basis(cplx constant, std::vector<cplx> points,
                                       std::vector<cplx> coefficients) {
        if (points.size() != coefficients.size())
            throw MalformedFunction("pole-basis: need one coefficient per basis point");
        double prev = 0.0;
        for (const cplx& a : points) {
            const double mod = std::abs(a);
            if (!(mod < 1.0))
                throw MalformedFunction("pole-basis: basis points must lie strictly inside the disk");
            if (mod < prev - 1e-12)
                throw MalformedFunction("pole-basis: basis points must be sorted by modulus ascending");
            prev = std::max(prev, mod);
        }
        RationalFunction f;
        f.form_ = RationalForm::PoleBasis;
        f.constant_ = constant;
        f.points_ = std::move(points);
        f.coefficients_ = std::move(coefficients);
        f.degree_ = static_cast<int>(f.points_.size());
        return f;
    }

    static RationalFunction poly_ratio(std::vector<cplx> numerator, std::vector<cplx> denominator) {
        detail::poly_trim(numerator);
        detail::poly_trim(denominator);
        if (denominator.size() == 1 && denominator[0] == cplx{0.0, 0.0})
            throw MalformedFunction("poly-ratio: denominator is identically zero");
        RationalFunction f;
        f.form_ = RationalForm::PolyRatio;
        f.numerator_ = std::move(numerator);
        f.denominator_ = std::move(denominator);
        f.degree_ = static_cast<int>(std::max(detail::poly_degree(f.numerator_),
                                              detail::poly_degree(f.denominator_)));
        f.check_denominator_off_circle();
        return f;
    }

    static RationalFunction taylor(std::vector<cplx> coefficients) {
        detail::poly_trim(coefficients);
        RationalFunction f;
        f.form_ = RationalForm::TaylorPoly;
        f.numerator_ = std::move(coefficients);
        f.degree_ = static_cast<int>(detail::poly_degree(f.numerator_));
        return f;
    }

    static RationalFunction constant(cplx value) { return taylor({value}); }
    static RationalFunction identity() { return taylor({cplx{0.0, 0.0}, cplx{1.0, 0.0}}); }

    /// z^n as a taylor-poly form.
    static RationalFunction power(int n) {
        std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
        c.back() = 1.0;
        return taylor(std::move(c));
    }

    RationalForm form() const { return form_; }
    int degree() const { return degree_; }

    const std::vector<cplx>& numerator() const { return numerator_; }
    const std::vector<cplx>& denominator() const { return denominator_; }
    const std::vector<cplx>& basis_points() const { return points_; }
    const std::vector<cplx>& coefficients() const { return coefficients_; }
    cplx constant_term() const { return constant_; }

    cplx operator()(cplx z) const { return eval_impl(z).first; }
    cplx derivative(cplx z) const { return eval_impl(z).second; }

    /// Value and derivative in one structural pass.
    std::pair<cplx, cplx> value_and_derivative(cplx z) const { return eval_impl(z); }

    /// Pole locations with multiplicity, when the structure exposes them
    /// exactly: pole-basis (1/conj(a_k) per nonzero basis point) and
    /// taylor-poly (none). Poly-ratio poles would require root-finding, so
    /// nullopt is returned and callers fall back to argument-principle checks.
    std::optional<std::vector<cplx>> poles() const {
        switch (form_) {
        case RationalForm::TaylorPoly:
            return std::vector<cplx>{};
        case RationalForm::PoleBasis: {
            std::vector<cplx> p;
            for (const cplx& a : points_)
                if (a != cplx{0.0, 0.0}) p.push_back(1.0 / std::conj(a));
            return p;
        }
        case RationalForm::PolyRatio:
            return std::nullopt;
        }
        return std::nullopt;
    }

    /// Exact conversion to the poly-ratio form by symbolic factor expansion.
    RationalFunction to_poly_ratio() const {
        switch (form_) {
        case RationalForm::PolyRatio:
            return *this;
        case RationalForm::TaylorPoly:
            return poly_ratio(numerator_, {cplx{1.0, 0.0}});
        case RationalForm::PoleBasis:
            break;
        }
        const std::size_t m = points_.size();
        // Prefix denominators d_k = prod_{j<=k} (1 - conj(a_j) z) and suffix
        // products s_k = prod_{j>k} (1 - conj(a_j) z).
        std::vector<detail::Poly> prefix(m + 1), suffix(m + 1);
        prefix[0] = {cplx{1.0, 0.0}};
        for (std::size_t k = 0; k < m; ++k)
            prefix[k + 1] = detail::poly_mul(prefix[k], {cplx{1.0, 0.0}, -std::conj(points_[k])});
        suffix[m] = {cplx{1.0, 0.0}};
        for (std::size_t k = m; k-- > 0;)
            suffix[k] = detail::poly_mul(suffix[k + 1], {cplx{1.0, 0.0}, -std::conj(points_[k])});

        detail::Poly num = detail::poly_scale(prefix[m], constant_);
        detail::Poly zeros_prefix = {cplx{1.0, 0.0}}; // prod_{j<k} (z - a_j)
        cplx unimodular{1.0, 0.0};                    // prod_{j<k} conj(a_j)/|a_j| (z-factors excluded)
        double sign = 1.0;                             // (-1)^{k-1}
        for (std::size_t k = 0; k < m; ++k) {
            const cplx a = points_[k];
            const double s = std::sqrt(1.0 - std::norm(a));
            // c_k * e_k * d_m = c_k s (-1)^k unimodular * zeros_prefix * suffix[k+1]
            const cplx factor = coefficients_[k] * s * sign * unimodular;
            num = detail::poly_add(num,
                                   detail::poly_scale(detail::poly_mul(zeros_prefix, suffix[k + 1]), factor));
            // Advance the Blaschke prefix for the next term.
            if (a == cplx{0.0, 0.0}) {
                zeros_prefix = detail::poly_mul(zeros_prefix, {cplx{0.0, 0.0}, cplx{1.0, 0.0}});
                // the origin factor is z itself: no unimodular constant, no sign flip
            } else {
                zeros_prefix = detail::poly_mul(zeros_prefix, {-a, cplx{1.0, 0.0}});
                unimodular *= std::conj(a) / std::abs(a);
                sign = -sign;
            }
        }
        return poly_ratio(std::move(num), prefix[m]);
    }

    /// The same map multiplied by a scalar (boundary length is 1-homogeneous).
    RationalFunction scaled(cplx factor) const {
        RationalFunction f(*this);
        switch (form_) {
        case RationalForm::PoleBasis:
            f.constant_ *= factor;
            for (auto& c : f.coefficients_) c *= factor;
            break;
        case RationalForm::PolyRatio:
        case RationalForm::TaylorPoly:
            for (auto& c : f.numerator_) c *= factor;
            break;
        }
        return f;
    }

private:
    RationalFunction() = default;

    std::pair<cplx, cplx> eval_impl(cplx z) const {
        switch (form_) {
        case RationalForm::TaylorPoly:
            return {detail::poly_eval(numerator_, z),
                    detail::poly_eval(detail::poly_derivative(numerator_), z)};
        case RationalForm::PolyRatio: {
            const cplx q = detail::poly_eval(denominator_, z);
            const cplx qd = detail::poly_eval(detail::poly_derivative(denominator_), z);
            guard_pole_proximity(q, qd);
            const cplx p = detail::poly_eval(numerator_, z);
            const cplx pd = detail::poly_eval(detail::poly_derivative(numerator_), z);
            return {p / q, (pd * q - p * qd) / (q * q)};
        }
        case RationalForm::PoleBasis:
            return eval_pole_basis(z);
        }
        throw MalformedFunction("unreachable form");
    }

    std::pair<cplx, cplx> eval_pole_basis(cplx z) const {
        for (const cplx& a : points_) {
            if (a == cplx{0.0, 0.0}) continue;
            if (std::abs(z - 1.0 / std::conj(a)) <= pole_proximity_tol)
                throw PoleProximity("evaluation point within 1e-13 of a pole");
        }
        cplx value = constant_;
        cplx deriv{0.0, 0.0};
        cplx blaschke{1.0, 0.0};   // B_{k-1}(z)
        cplx blaschke_d{0.0, 0.0}; // B_{k-1}'(z)
        for (std::size_t k = 0; k < points_.size(); ++k) {
            const cplx a = points_[k];
            const double s = std::sqrt(1.0 - std::norm(a));
            const cplx den = 1.0 - std::conj(a) * z;
            const cplx e = s * blaschke / den;
            const cplx ed = s * (blaschke_d * den + std::conj(a) * blaschke) / (den * den);
            value += coefficients_[k] * e;
            deriv += coefficients_[k] * ed;
            const auto [phi, phi_d] = detail::blaschke_factor(a, z);
            blaschke_d = blaschke_d * phi + blaschke * phi_d;
            blaschke = blaschke * phi;
        }
        return {value, deriv};
    }

    void guard_pole_proximity(cplx q, cplx q_deriv) const {
        if (q == cplx{0.0, 0.0})
            throw PoleProximity("evaluation point is a zero of the denominator");
        if (q_deriv != cplx{0.0, 0.0} && std::abs(q) / std::abs(q_deriv) < pole_proximity_tol)
            throw PoleProximity("evaluation point within 1e-13 of a pole");
    }

    // Construction-time screen: reject denominators with a root on (or within
    // ~1e-9 of) the unit circle. The Newton quotient |Q|/|Q'| at the grid
    // minimum is a first-order distance estimate that does not require
    // root-finding; it underestimates near multiple roots, which only makes
    // the screen stricter.
    void check_denominator_off_circle() const {
        if (detail::poly_degree(denominator_) == 0) return;
        std::size_t nodes = 512;
        while (nodes < 4 * denominator_.size()) nodes *= 2;
        const detail::Poly qd = detail::poly_derivative(denominator_);
        for (std::size_t j = 0; j < nodes; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j)
                                 / static_cast<double>(nodes);
            const cplx zeta = std::polar(1.0, theta);
            const cplx q = detail::poly_eval(denominator_, zeta);
            if (q == cplx{0.0, 0.0})
                throw MalformedFunction("poly-ratio: denominator has a root on the unit circle");
            const cplx d = detail::poly_eval(qd, zeta);
            if (d != cplx{0.0, 0.0} && std::abs(q) / std::abs(d) < 1e-9)
                throw MalformedFunction("poly-ratio: denominator root within 1e-9 of the unit circle");
        }
    }

    RationalForm form_ = RationalForm::TaylorPoly;
    int degree_ = 0;
    cplx constant_{0.0, 0.0};        // pole-basis only
    std::vector<cplx> points_;       // pole-basis only
    std::vector<cplx> coefficients_; // pole-basis only
    std::vector<cplx> numerator_;    // poly-ratio / taylor
    std::vector<cplx> denominator_;  // poly-ratio only
};

} // namespace ratlen
