#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ratlen/concepts.hpp"
#include "ratlen/detail/legendre.hpp"
#include "ratlen/detail/summation.hpp"
#include "ratlen/errors.hpp"
#include "ratlen/mt_basis.hpp"
#include "ratlen/quadrature.hpp"
#include "ratlen/rational.hpp"

namespace ratlen {

enum class CoefficientPolicy { EqualSplit, GeometricDecay };

/// Prescription for a univalent rational function with poles exactly at the
/// given points outside the closed disk. Coefficients are sized so that a
/// weighted tail sum stays at budget_fraction of the positivity budget that
/// keeps Re R' > 0 on the disk.
struct PolePrescription {
    std::vector<cplx> poles; ///< each |b_j| > 1
    CoefficientPolicy policy = CoefficientPolicy::EqualSplit;
    double budget_fraction = 0.9; ///< fraction of the budget actually spent, in (0, 1]
};

/// Right-hand side of the coefficient budget: a1 sqrt(1-a1^2) (1-2a1^2) / (1+a1)^4
/// for the leading reflected point, a1 = min_j 1/|b_j|. Positive only for
/// a1 < 1/sqrt(2), which is why the criterion needs at least one pole (the
/// farthest one) beyond sqrt(2).
inline double pole_budget_rhs(double a1) {
    if (!(a1 > 0.0 && a1 < 1.0 / std::sqrt(2.0)))
        throw CriterionInapplicable("budget requires 0 < a1 < 1/sqrt(2)");
    const double num = a1 * std::sqrt(1.0 - a1 * a1) * (1.0 - 2.0 * a1 * a1);
    const double den = std::pow(1.0 + a1, 4);
    return num / den;
}

/// Builds a pole-basis rational function with the prescribed poles whose
/// derivative has positive real part on the disk (hence univalent). The
/// leading coefficient is unimodular; trailing coefficient magnitudes are
/// split across the budget by the chosen policy. Internally the problem is
/// rotated so the leading reflected point is positive real; the rotation
/// returns to the original poles because the basis is rotation-covariant.
inline RationalFunction construct_from_poles(const PolePrescription& p) {
    if (p.poles.empty()) throw MalformedFunction("pole prescription needs at least one pole");
    if (!(p.budget_fraction > 0.0 && p.budget_fraction <= 1.0))
        throw MalformedFunction("budget fraction must lie in (0, 1]");

    std::vector<cplx> a;
    a.reserve(p.poles.size());
    for (const cplx& b : p.poles) {
        if (!(std::abs(b) > 1.0))
            throw MalformedFunction("prescribed poles must lie strictly outside the closed disk");
        a.push_back(1.0 / std::conj(b));
    }
    std::sort(a.begin(), a.end(), [](const cplx& x, const cplx& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax < ay;
        return std::arg(x) < std::arg(y);
    });

    const double a1 = std::abs(a.front());
    if (a1 >= 1.0 / std::sqrt(2.0))
        throw CriterionInapplicable(
            "every prescribed pole lies within sqrt(2) of the origin; the budget needs the "
            "farthest one beyond it");

    const std::size_t m = a.size();
    const double budget = p.budget_fraction * pole_budget_rhs(a1);

    // W_k = sqrt((1+|a_k|)/(1-|a_k|)) * sum_{j<=k} (1+|a_j|)/(1-|a_j|), k >= 2
    std::vector<double> W(m + 1, 0.0);
    double tail = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        const double ak = std::abs(a[k - 1]);
        tail += (1.0 + ak) / (1.0 - ak);
        if (k >= 2) W[k] = std::sqrt((1.0 + ak) / (1.0 - ak)) * tail;
    }

    const cplx phase = a.front() / a1; // e^{i phi}, rotation that realigns a_1
    std::vector<cplx> c(m);
    c[0] = phase;
    if (m >= 2) {
        double geo_total = 0.0;
        if (p.policy == CoefficientPolicy::GeometricDecay) {
            double w = 1.0;
            for (std::size_t k = 2; k <= m; ++k, w *= 0.5) geo_total += w;
        }
        double geo_w = 1.0;
        for (std::size_t k = 2; k <= m; ++k) {
            double share;
            if (p.policy == CoefficientPolicy::EqualSplit) {
                share = budget / static_cast<double>(m - 1);
            } else {
                share = budget * geo_w / geo_total;
                geo_w *= 0.5;
            }
            const double mag = share / W[k];
            if (mag < 1e-15)
                throw BudgetUnderflow("coefficient magnitude fell below 1e-15");
            c[k - 1] = phase * mag;
        }
    }
    return RationalFunction::pole_basis({0.0, 0.0}, a, c);
}

struct KayumovConfig {
    int n = 0;               ///< truncation degree, >= 13
    std::optional<double> r = std::nullopt; ///< contraction radius; default 1 - 5 ln(n)/n
};

/// Default contraction radius 1 - 5 ln(n)/n (natural logarithm).
inline double kayumov_radius(int n) {
    if (n < 13) throw SubcriticalDegree("truncation degree must be at least 13");
    return 1.0 - 5.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
}

/// Truncates a schlicht-normalized Taylor series (coeffs[0] is the z^1
/// coefficient) to the polynomial sum_{j=1}^n a_j r^j z^j in taylor form.
inline RationalFunction kayumov_truncate(const std::vector<cplx>& taylor_coeffs,
                                         const KayumovConfig& cfg) {
    if (cfg.n < 13) throw SubcriticalDegree("truncation degree must be at least 13");
    if (taylor_coeffs.size() < static_cast<std::size_t>(cfg.n))
        throw TooFewCoefficients("need at least n Taylor coefficients");
    const double r = cfg.r.value_or(kayumov_radius(cfg.n));
    if (!(r > 0.0 && r < 1.0))
        throw MalformedFunction("contraction radius must lie in (0, 1)");

    std::vector<cplx> out(static_cast<std::size_t>(cfg.n) + 1, cplx{0.0, 0.0});
    double rpow = 1.0;
    for (int j = 1; j <= cfg.n; ++j) {
        rpow *= r;
        out[static_cast<std::size_t>(j)] = taylor_coeffs[static_cast<std::size_t>(j - 1)] * rpow;
    }
    return RationalFunction::taylor(out);
}

/// Rescales to unit sup norm on the circle.
inline RationalFunction normalize_sup_norm(const RationalFunction& R, const CircleGrid& grid) {
    const double s = sup_norm_circle(R, grid);
    if (!(s > 0.0)) throw MalformedFunction("cannot normalize a function that vanishes on the circle");
    return R.scaled(cplx{1.0 / s, 0.0});
}

struct RungeConfig {
    double delta = 0.1;          ///< contour radius margin: arcs live on |z| = 1 + 2 delta
    int order = 1;               ///< moment order m >= 0; poles get order m + 1
    int arcs = 1;                ///< N >= 1 equal arcs
    double epsilon = 0.1;        ///< exponent slack for the automatic arc-count rule
    int arc_quadrature_nodes = 16;
    /// Position of the expansion point zeta_j within its arc, as a fraction
    /// of the arc span. The default 0.5 (midpoint) gains an extra order for
    /// even m by symmetry; any other value exhibits the generic N^-(m+1)
    /// error decay.
    double center_offset = 0.5;
};

/// Arc count floor(delta^(-(m+4)/(m+1) - epsilon)) + 1 balancing the
/// approximation error against the pole count.
inline int runge_auto_arc_count(double delta, int order, double epsilon) {
    if (!(delta > 0.0)) throw MalformedFunction("delta must be positive");
    if (order < 0 || !(epsilon > 0.0)) throw MalformedFunction("invalid auto arc-count inputs");
    const double expo = -(static_cast<double>(order) + 4.0) / (static_cast<double>(order) + 1.0) -
                        epsilon;
    const double raw = std::pow(delta, expo);
    if (!(raw < 1e7)) throw MalformedFunction("automatic arc count exceeds practical limits");
    return static_cast<int>(std::floor(raw)) + 1;
}

/// Rational approximant of f from Cauchy-kernel moments on the circle of
/// radius 1 + 2 delta: N equal arcs with expansion points zeta_j, per-arc moments
/// mu_{j,l} = (1/2 pi i) int_{I_j} (zeta_j - zeta)^l f(zeta) d zeta, and
///
///   R(z) = sum_j sum_{l<=m} mu_{j,l} (zeta_j - z)^{-(l+1)}.
///
/// The result is returned in pole-basis form (points 1/conj(zeta_j), each
/// m+1 times) with coefficients recovered by orthonormal-basis projection;
/// the expansion is exact because R lies in the span of that basis.
template <PointMap F>
RationalFunction runge_approximate(const F& f, const RungeConfig& cfg) {
    if (!(cfg.delta > 0.0)) throw MalformedFunction("delta must be positive");
    if (cfg.order < 0) throw MalformedFunction("moment order must be non-negative");
    if (cfg.arcs < 1) throw MalformedFunction("arc count must be at least 1");
    if (cfg.arc_quadrature_nodes < 8)
        throw MalformedFunction("need at least 8 quadrature nodes per arc");
    if (!(cfg.center_offset > 0.0 && cfg.center_offset < 1.0))
        throw MalformedFunction("arc center offset must lie in (0, 1)");

    const double rho = 1.0 + 2.0 * cfg.delta;
    const std::size_t N = static_cast<std::size_t>(cfg.arcs);
    const std::size_t L = static_cast<std::size_t>(cfg.order) + 1; // moments per arc

    const auto boundary = [&](double theta) -> cplx {
        cplx w;
        try {
            w = f(std::polar(rho, theta));
        } catch (const std::exception& e) {
            throw ContourEvaluationFailure(std::string("target failed on the contour: ") +
                                           e.what());
        }
        if (!(std::isfinite(w.real()) && std::isfinite(w.imag())))
            throw ContourEvaluationFailure("target not finite on the contour");
        return w;
    };

    const auto rule = detail::gauss_legendre(static_cast<std::size_t>(cfg.arc_quadrature_nodes));
    // moments mu_{j,l} = (1/2 pi) int_arc (zeta_j - zeta)^l f(zeta) zeta d theta
    const auto panel = [&](cplx zeta_j, double lo, double hi, std::vector<cplx>& acc) {
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (const auto& [x, w] : rule) {
            const double theta = mid + half * x;
            const cplx zeta = std::polar(rho, theta);
            const cplx base = boundary(theta) * zeta *
                              (w * half / (2.0 * std::numbers::pi));
            cplx pw{1.0, 0.0};
            for (std::size_t l = 0; l < L; ++l) {
                acc[l] += base * pw;
                pw *= zeta_j - zeta;
            }
        }
    };

    std::vector<cplx> centers(N);
    std::vector<std::vector<cplx>> moments(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double lo = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(N);
        const double hi =
            2.0 * std::numbers::pi * static_cast<double>(j + 1) / static_cast<double>(N);
        centers[j] = std::polar(rho, lo + cfg.center_offset * (hi - lo));

        std::vector<cplx> coarse(L), fine(L);
        panel(centers[j], lo, hi, coarse);
        panel(centers[j], lo, 0.5 * (lo + hi), fine);
        panel(centers[j], 0.5 * (lo + hi), hi, fine);
        for (std::size_t l = 0; l < L; ++l)
            if (std::abs(coarse[l] - fine[l]) > 1e-12 * (1.0 + std::abs(fine[l])))
                throw QuadratureUnderResolved(
                    "arc moment changed by more than 1e-12 under node doubling");
        moments[j] = std::move(fine);
    }

    const auto direct = [&](cplx z) -> cplx {
        std::vector<cplx> parts(N);
        for (std::size_t j = 0; j < N; ++j) {
            const cplx u = 1.0 / (centers[j] - z);
            cplx acc = moments[j][L - 1];
            for (std::size_t l = L - 1; l-- > 0;) acc = acc * u + moments[j][l];
            parts[j] = acc * u;
        }
        return detail::pairwise_sum(std::span<const cplx>(parts));
    };

    std::vector<cplx> points;
    points.reserve(N * L);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t l = 0; l < L; ++l) points.push_back(1.0 / std::conj(centers[j]));

    // project onto the orthonormal basis on uniform circle nodes, doubling
    // the node count until the coefficients are stable
    const std::size_t K = points.size();
    const auto project = [&](std::size_t M) {
        std::vector<cplx> c(K, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < M; ++i) {
            const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                               static_cast<double>(M));
            const cplx rz = direct(z);
            const auto basis = mt_basis_values(points, z);
            for (std::size_t k = 0; k < K; ++k) c[k] += rz * std::conj(basis[k]);
        }
        for (cplx& v : c) v /= static_cast<double>(M);
        return c;
    };

    std::size_t M = std::max<std::size_t>(1024, std::bit_ceil(4 * K));
    std::vector<cplx> coeffs = project(M);
    for (;; M *= 2) {
        if (2 * M > (1u << 18))
            throw NoConvergence("basis projection did not stabilize");
        const std::vector<cplx> refined = project(2 * M);
        double diff = 0.0, scale = 1.0;
        for (std::size_t k = 0; k < K; ++k) {
            diff = std::max(diff, std::abs(refined[k] - coeffs[k]));
            scale = std::max(scale, std::abs(refined[k]));
        }
        coeffs = refined;
        if (diff <= 1e-12 * scale) break;
    }

    return RationalFunction::pole_basis({0.0, 0.0}, points, coeffs);
}

/// Argument-contracted map g(z) = f(r z); g is analytic on |z| <= 1/r when f
/// is analytic on the closed unit disk.
template <typename F>
struct ScaledArgument {
    F f;
    double r;
    cplx operator()(cplx z) const { return f(r * z); }
    cplx derivative(cplx z) const
        requires AnalyticMap<F>
    {
        return r * f.derivative(r * z);
    }
};

template <typename F>
ScaledArgument<std::decay_t<F>> scale_argument(F&& f, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw MalformedFunction("contraction radius must lie in (0, 1]");
    return {std::forward<F>(f), r};
}

/// Margin delta with 1 + 4 delta = 1/r: the contracted map scale_argument(f, r)
/// is evaluable on |z| <= 1 + 4 delta, leaving the moment contour radius
/// 1 + 2 delta strictly inside its analyticity disk.
inline double contraction_delta(double r) {
    if (!(r > 0.0 && r < 1.0)) throw MalformedFunction("contraction radius must lie in (0, 1)");
    return (1.0 / r - 1.0) / 4.0;
}

} // namespace ratlen
