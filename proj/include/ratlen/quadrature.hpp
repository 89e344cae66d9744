#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratlen/blaschke.hpp"
#include "ratlen/circle_grid.hpp"
#include "ratlen/concepts.hpp"
#include "ratlen/detail/legendre.hpp"
#include "ratlen/detail/poly.hpp"
#include "ratlen/detail/summation.hpp"
#include "ratlen/errors.hpp"
#include "ratlen/rational.hpp"

namespace ratlen {

namespace detail {

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

inline constexpr std::size_t circle_node_cap = std::size_t{1} << 20;

/// Adaptive uniform-trapezoid mean of g over the circle of the given radius:
/// (1/2pi) int g(r e^{i theta}) d theta. The trapezoid rule is spectrally
/// accurate for smooth periodic integrands; the grid is doubled (reusing all
/// previous nodes bit-exactly) until two consecutive doublings agree to the
/// grid's relative tolerance.
template <typename T, typename G>
T circle_mean_adaptive(G&& g, double radius, const CircleGrid& grid) {
    grid.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    auto node_value = [&](std::size_t j, std::size_t m) -> T {
        const double theta = two_pi * static_cast<double>(j) / static_cast<double>(m);
        const cplx z = std::polar(radius, theta);
        T v;
        try {
            v = g(z);
        } catch (const Error& e) {
            throw SingularityOnContour(std::string("node evaluation failed: ") + e.what());
        }
        if (!finite_value(v))
            throw SingularityOnContour("non-finite integrand value on the contour");
        return v;
    };

    std::size_t m = grid.node_count;
    std::vector<T> vals(m);
    for (std::size_t j = 0; j < m; ++j) vals[j] = node_value(j, m);

    auto mean_of = [](const std::vector<T>& v) {
        return pairwise_sum(v) / static_cast<double>(v.size());
    };
    auto abs_scale = [](const std::vector<T>& v) {
        std::vector<double> mods(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) mods[i] = std::abs(v[i]);
        return pairwise_sum(mods) / static_cast<double>(v.size());
    };

    T mean = mean_of(vals);
    int agreements = 0;
    for (int d = 0; d < grid.refinement.max_doublings && 2 * m <= circle_node_cap; ++d) {
        std::vector<T> next(2 * m);
        for (std::size_t j = 0; j < m; ++j) {
            next[2 * j] = vals[j];
            next[2 * j + 1] = node_value(2 * j + 1, 2 * m);
        }
        vals = std::move(next);
        m *= 2;
        const T refined = mean_of(vals);
        const double tol = std::max(grid.refinement.rel_tol * std::abs(refined),
                                    16.0 * 2.220446049250313e-16 * abs_scale(vals));
        if (std::abs(refined - mean) <= tol) {
            ++agreements;
        } else {
            agreements = 0;
        }
        mean = refined;
        if (agreements >= 2) return mean;
    }
    throw NoConvergence("circle quadrature did not converge within the refinement budget");
}

/// Recursive Gauss-Legendre panel integration with a fixed absolute budget.
template <typename H>
double gl16_panel(H&& h, double a, double b) {
    const auto& nw = gauss_legendre_16();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    std::vector<double> terms(nw.size());
    for (std::size_t i = 0; i < nw.size(); ++i)
        terms[i] = nw[i].second * h(mid + half * nw[i].first);
    return half * pairwise_sum(terms);
}

template <typename H>
double adaptive_gl_recurse(H&& h, double a, double b, double abs_tol, int depth) {
    const double whole = gl16_panel(h, a, b);
    const double mid = 0.5 * (a + b);
    const double split = gl16_panel(h, a, mid) + gl16_panel(h, mid, b);
    if (std::abs(whole - split) <= abs_tol) return split;
    if (depth <= 0)
        throw NoConvergence("radial panel integration did not converge");
    return adaptive_gl_recurse(h, a, mid, 0.5 * abs_tol, depth - 1) +
           adaptive_gl_recurse(h, mid, b, 0.5 * abs_tol, depth - 1);
}

template <typename H>
double adaptive_panel_integral(H&& h, double a, double b, double rel_tol, int max_depth = 24) {
    const double rough = gl16_panel(h, a, b);
    const double abs_tol = std::max(std::abs(rough), 1e-12) * rel_tol;
    return adaptive_gl_recurse(h, a, b, abs_tol, max_depth);
}

/// Number of zeros of an ascending-coefficient polynomial inside |z| < radius,
/// by adaptive discrete argument tracking along the circle (integer-exact once
/// every angular increment of the polynomial value stays below pi/2).
inline int polynomial_winding(const Poly& q, double radius) {
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t m = 1024; m <= circle_node_cap; m *= 2) {
        double total = 0.0;
        bool resolved = true;
        cplx prev = poly_eval(q, std::polar(radius, 0.0));
        if (prev == cplx{0.0, 0.0}) throw NoConvergence("polynomial vanishes on the contour");
        for (std::size_t j = 1; j <= m; ++j) {
            const double theta = two_pi * static_cast<double>(j % m) / static_cast<double>(m);
            const cplx cur = poly_eval(q, std::polar(radius, theta));
            if (cur == cplx{0.0, 0.0}) throw NoConvergence("polynomial vanishes on the contour");
            const double inc = std::arg(cur / prev);
            if (std::abs(inc) >= 0.5 * std::numbers::pi) {
                resolved = false;
                break;
            }
            total += inc;
            prev = cur;
        }
        if (resolved) return static_cast<int>(std::lround(total / two_pi));
    }
    throw NoConvergence("argument tracking for pole counting did not resolve");
}

} // namespace detail

/// True when R has a pole in the closed disk of the given radius. Pole-basis
/// and taylor forms expose poles exactly; poly-ratio denominators are handled
/// by argument-principle zero counting (no root-finding).
inline bool has_pole_in_closed_disk(const RationalFunction& R, double radius = 1.0) {
    if (auto ps = R.poles()) {
        for (const cplx& p : *ps)
            if (std::abs(p) <= radius + 1e-12) return true;
        return false;
    }
    return detail::polynomial_winding(R.denominator(), radius) > 0;
}

/// M_t[f'](r): the angular mean of |f'|^t on the circle of radius r. The grid
/// argument supplies the initial node count and refinement policy; the radius
/// comes from r, not from the grid.
template <AnalyticMap F>
double circle_integral_means(const F& f, double t, double r, const CircleGrid& grid) {
    if (!(r > 0.0 && r <= 1.0))
        throw MalformedFunction("circle means require a radius in (0, 1]");
    return detail::circle_mean_adaptive<double>(
        [&](cplx z) { return std::pow(std::abs(f.derivative(z)), t); }, r, grid);
}

/// The boundary-length functional: integral of |R'| over the unit circle
/// against normalized arc measure (image length divided by 2pi).
template <AnalyticMap F>
double boundary_length(const F& R, const CircleGrid& grid) {
    return detail::circle_mean_adaptive<double>(
        [&](cplx z) { return std::abs(R.derivative(z)); }, 1.0, grid);
}

/// sup of |f| over the circle of grid.radius: grid maximum followed by a
/// golden-section polish on the bracketing arc (refined to ~1e-8 relative).
template <PointMap F>
double sup_norm_circle(const F& f, const CircleGrid& grid) {
    grid.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    auto mod_at = [&](double theta) {
        cplx v;
        try {
            v = f(std::polar(grid.radius, theta));
        } catch (const Error& e) {
            throw SingularityOnContour(std::string("sup-norm evaluation failed: ") + e.what());
        }
        const double m = std::abs(v);
        if (!std::isfinite(m))
            throw SingularityOnContour("non-finite value on the contour");
        return m;
    };
    const std::size_t m = grid.node_count;
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double v = mod_at(two_pi * static_cast<double>(j) / static_cast<double>(m));
        if (v > best_val) {
            best_val = v;
            best = j;
        }
    }
    const double h = two_pi / static_cast<double>(m);
    double lo = h * (static_cast<double>(best) - 1.0);
    double hi = h * (static_cast<double>(best) + 1.0);
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = mod_at(x1), f2 = mod_at(x2);
    for (int it = 0; it < 64; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = mod_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = mod_at(x1);
        }
    }
    return std::max({best_val, f1, f2});
}

/// Disk energy: int_D |R'|^2 dm2 with dm2 = du dv / pi, computed as
/// 2 int_0^1 M_2[R'](r) r dr by adaptive radial panels over adaptive circle
/// means. Requires no poles in the closed disk.
template <AnalyticMap F>
double disk_energy(const F& R, const CircleGrid& grid) {
    if constexpr (std::is_same_v<std::decay_t<F>, RationalFunction>) {
        if (has_pole_in_closed_disk(R, 1.0))
            throw PoleInDisk("disk energy requires all poles strictly outside the closed disk");
    }
    auto shell = [&](double r) {
        if (r <= 0.0) return 0.0;
        return 2.0 * r * circle_integral_means(R, 2.0, r, grid);
    };
    return detail::adaptive_panel_integral(shell, 0.0, 1.0, grid.refinement.rel_tol);
}

/// Dyn'kin's comparison integral L(r) = int_{|w|<r} ((1-|B(w)|)/(1-|w|))^2 dm2.
/// The radial sweep stops at 1 - edge_gap (the integrand tends to the finite
/// radial limit governed by |B'| there, and the omitted annulus has area
/// O(edge_gap)); panels refine dyadically toward the rim.
inline double dynkin_L(const BlaschkeProduct& B, double r, const CircleGrid& grid,
                       double edge_gap = 1e-6) {
    if (!(r > 0.0 && r <= 1.0))
        throw MalformedFunction("dynkin_L requires a radius in (0, 1]");
    const double upper = std::min(r, 1.0 - edge_gap);
    auto shell = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double defect = 1.0 - rho;
        const double mean = detail::circle_mean_adaptive<double>(
            [&](cplx z) {
                const double d = (1.0 - std::abs(B(z))) / defect;
                return d * d;
            },
            rho, grid);
        return 2.0 * rho * mean;
    };
    // dyadic breakpoints toward the rim keep each panel's integrand smooth
    std::vector<double> cuts{0.0};
    double c = 0.5;
    while (c < upper - 1e-9) {
        cuts.push_back(c);
        c = 0.5 * (c + 1.0);
    }
    cuts.push_back(upper);
    std::vector<double> parts;
    parts.reserve(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        parts.push_back(detail::adaptive_panel_integral(shell, cuts[i], cuts[i + 1],
                                                        grid.refinement.rel_tol, 18));
    return detail::pairwise_sum(parts);
}

} // namespace ratlen
