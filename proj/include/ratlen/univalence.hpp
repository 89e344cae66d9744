#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ratlen/concepts.hpp"
#include "ratlen/errors.hpp"
#include "ratlen/quadrature.hpp"
#include "ratlen/rational.hpp"

namespace ratlen {

enum class CertMethod { ReDerivative, BoundarySimple };

/// Numerical univalence certificate. `passed` is a resolution-qualified
/// verdict, never a proof; `indeterminate` marks near-tangent boundary curves
/// or unresolved winding sums, and an indeterminate certificate never passes.
struct UnivalenceCertificate {
    CertMethod method = CertMethod::BoundarySimple;
    bool passed = false;
    bool indeterminate = false;
    double min_re_value = 0.0; ///< Re-derivative witness (ReDerivative only)
    cplx min_re_location{0.0, 0.0};
    long winding = 0; ///< winding of R(T) around R(0) (BoundarySimple only)
    std::optional<std::pair<double, double>> intersection_params;
    std::size_t resolution = 0;
};

struct MinRePoint {
    double value = 0.0;
    cplx location{0.0, 0.0};
};

namespace detail {

template <typename F>
void require_pole_free(const F& f, double radius) {
    if constexpr (std::is_same_v<std::decay_t<F>, RationalFunction>) {
        if (has_pole_in_closed_disk(f, radius))
            throw PoleInDisk("function has a pole inside the working disk");
    } else {
        (void)f;
        (void)radius;
    }
}

inline double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

} // namespace detail

/// Minimum of Re f' over the closed disk of radius rho, scanned on a polar
/// grid (grid_density angles x grid_density radii plus the center) and
/// polished by compass descent constrained to the disk. Since Re f' is
/// harmonic the true minimum sits on |z| = rho; the grid plus descent finds
/// it without derivatives of the objective.
template <AnalyticMap F>
MinRePoint min_re_derivative(const F& f, double rho, std::size_t grid_density) {
    if (!(rho > 0.0 && rho < 1.0))
        throw MalformedFunction("re-derivative scan radius must lie in (0, 1)");
    if (grid_density < 8) throw MalformedFunction("re-derivative grid density must be >= 8");
    detail::require_pole_free(f, rho);

    const auto objective = [&](cplx z) { return std::real(f.derivative(z)); };

    MinRePoint best{objective(cplx{0.0, 0.0}), cplx{0.0, 0.0}};
    for (std::size_t i = 0; i < grid_density; ++i) {
        const double r =
            rho * static_cast<double>(i + 1) / static_cast<double>(grid_density);
        for (std::size_t j = 0; j < grid_density; ++j) {
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_density);
            const cplx z = std::polar(r, theta);
            const double v = objective(z);
            if (v < best.value) best = {v, z};
        }
    }

    double step = rho / static_cast<double>(grid_density);
    const cplx dirs[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    while (step > 1e-12) {
        bool moved = false;
        for (const cplx& d : dirs) {
            cplx z = best.location + step * d;
            const double az = std::abs(z);
            if (az > rho) z *= rho / az;
            const double v = objective(z);
            if (v < best.value) {
                best = {v, z};
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

/// Samples R(T) as an M-vertex closed polyline, sweeps it for segment
/// self-intersections, and computes the winding number around R(0). Passes
/// iff the curve is simple and the winding is 1: by the argument principle a
/// simple boundary curve traversed once certifies injectivity on the disk.
template <AnalyticMap F>
UnivalenceCertificate boundary_simple(const F& f, std::size_t M) {
    if (M < 64) throw MalformedFunction("boundary certification needs at least 64 vertices");
    detail::require_pole_free(f, 1.0);

    UnivalenceCertificate cert;
    cert.method = CertMethod::BoundarySimple;
    cert.resolution = M;

    std::vector<cplx> v(M);
    cplx center;
    try {
        for (std::size_t j = 0; j < M; ++j)
            v[j] = f(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                         static_cast<double>(M)));
        center = f(cplx{0.0, 0.0});
    } catch (const Error& e) {
        throw SingularityOnContour(std::string("boundary sampling failed: ") + e.what());
    }

    double xmin = v[0].real(), xmax = v[0].real(), ymin = v[0].imag(), ymax = v[0].imag();
    for (const cplx& z : v) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    const double diameter = std::hypot(xmax - xmin, ymax - ymin);
    if (diameter < 1e-12) throw DegenerateImage("boundary image has numerically zero diameter");

    const double tol = 1e-12 * diameter * diameter; // cross products scale as length^2
    const double eps = 1e-12 * diameter;

    struct SegRec {
        double xlo, xhi, ylo, yhi;
        std::size_t idx;
    };
    std::vector<SegRec> segs(M);
    for (std::size_t i = 0; i < M; ++i) {
        const cplx a = v[i];
        const cplx b = v[(i + 1) % M];
        segs[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()),
                   std::min(a.imag(), b.imag()), std::max(a.imag(), b.imag()), i};
    }
    std::sort(segs.begin(), segs.end(),
              [](const SegRec& a, const SegRec& b) { return a.xlo < b.xlo; });

    const auto adjacent = [M](std::size_t i, std::size_t j) {
        return i == j || (i + 1) % M == j || (j + 1) % M == i;
    };

    bool crossing_found = false;
    std::vector<std::size_t> active; // indices into segs
    for (std::size_t s = 0; s < M && !crossing_found; ++s) {
        const SegRec& rec = segs[s];
        std::erase_if(active, [&](std::size_t k) { return segs[k].xhi < rec.xlo - eps; });
        for (std::size_t k : active) {
            const SegRec& other = segs[k];
            if (adjacent(rec.idx, other.idx)) continue;
            if (other.yhi < rec.ylo - eps || rec.yhi < other.ylo - eps) continue;
            const cplx a = v[rec.idx];
            const cplx b = v[(rec.idx + 1) % M];
            const cplx c = v[other.idx];
            const cplx d = v[(other.idx + 1) % M];
            const double d1 = detail::cross(b - a, c - a);
            const double d2 = detail::cross(b - a, d - a);
            const double d3 = detail::cross(d - c, a - c);
            const double d4 = detail::cross(d - c, b - c);
            const bool straddle1 = (d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol);
            const bool straddle2 = (d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol);
            if (straddle1 && straddle2) {
                crossing_found = true;
                const double per = 2.0 * std::numbers::pi / static_cast<double>(M);
                const std::size_t lo = std::min(rec.idx, other.idx);
                const std::size_t hi = std::max(rec.idx, other.idx);
                cert.intersection_params = {per * static_cast<double>(lo),
                                            per * static_cast<double>(hi)};
                break;
            }
            if (std::min(std::min(std::abs(d1), std::abs(d2)),
                         std::min(std::abs(d3), std::abs(d4))) <= tol)
                cert.indeterminate = true; // near-tangent pair: refuse to certify
        }
        active.push_back(s);
    }

    double total_arg = 0.0;
    bool winding_ok = true;
    for (std::size_t j = 0; j < M; ++j) {
        const cplx cur = v[j] - center;
        const cplx nxt = v[(j + 1) % M] - center;
        if (std::abs(cur) < eps || std::abs(nxt) < eps) {
            winding_ok = false;
            break;
        }
        total_arg += std::arg(nxt / cur);
    }
    if (winding_ok) {
        const double turns = total_arg / (2.0 * std::numbers::pi);
        cert.winding = std::lround(turns);
        if (std::abs(turns - static_cast<double>(cert.winding)) > 0.01) winding_ok = false;
    }
    if (!winding_ok) cert.indeterminate = true;

    cert.passed = !crossing_found && winding_ok && cert.winding == 1 && !cert.indeterminate;
    return cert;
}

/// Default polyline size for boundary certification at a given degree.
inline std::size_t default_boundary_resolution(int degree) {
    const long scaled = 64L * std::max(degree, 1);
    return static_cast<std::size_t>(std::max(4096L, scaled));
}

/// Number of preimages of w under R inside the unit disk, via the argument
/// principle: the circle mean of z R'(z)/(R(z) - w) is the preimage count.
template <AnalyticMap F>
long count_preimages(const F& f, cplx w, const CircleGrid& grid) {
    detail::require_pole_free(f, 1.0);

    const std::size_t probe = std::max<std::size_t>(4096, grid.node_count);
    double min_dist = std::numeric_limits<double>::infinity();
    try {
        for (std::size_t j = 0; j < probe; ++j) {
            const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                               static_cast<double>(probe));
            min_dist = std::min(min_dist, std::abs(f(z) - w));
        }
    } catch (const Error& e) {
        throw SingularityOnContour(std::string("boundary probe failed: ") + e.what());
    }
    if (min_dist < 1e-6)
        throw ValueOnBoundary("target value lies within 1e-6 of the boundary image");

    cplx val;
    try {
        val = detail::circle_mean_adaptive<cplx>(
            [&](cplx z) {
                const auto [fz, dfz] = [&] {
                    if constexpr (std::is_same_v<std::decay_t<F>, RationalFunction>) {
                        return f.value_and_derivative(z);
                    } else {
                        return std::pair<cplx, cplx>{f(z), f.derivative(z)};
                    }
                }();
                return z * dfz / (fz - w);
            },
            1.0, grid);
    } catch (const NoConvergence& e) {
        throw NonIntegerWinding(std::string("winding quadrature did not converge: ") + e.what());
    }
    const long k = std::lround(val.real());
    if (std::abs(val - cplx{static_cast<double>(k), 0.0}) > 0.1)
        throw NonIntegerWinding("winding integral is not close to an integer");
    return k;
}

/// Certificate-producing front end used by the command-line driver.
/// resolution = 0 selects the method default (96 for the re-derivative grid,
/// the degree-scaled polyline size for the boundary sweep).
template <AnalyticMap F>
UnivalenceCertificate certify_univalent(const F& f, CertMethod method,
                                        std::size_t resolution = 0, double rho = 0.999) {
    if (method == CertMethod::ReDerivative) {
        const std::size_t density = resolution == 0 ? 96 : resolution;
        const MinRePoint m = min_re_derivative(f, rho, density);
        UnivalenceCertificate cert;
        cert.method = CertMethod::ReDerivative;
        cert.min_re_value = m.value;
        cert.min_re_location = m.location;
        cert.resolution = density;
        cert.passed = m.value > 0.0;
        return cert;
    }
    std::size_t M = resolution;
    if (M == 0) {
        if constexpr (std::is_same_v<std::decay_t<F>, RationalFunction>)
            M = default_boundary_resolution(f.degree());
        else
            M = 4096;
    }
    return boundary_simple(f, M);
}

} // namespace ratlen
