#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "ratlen/concepts.hpp"
#include "ratlen/detail/summation.hpp"
#include "ratlen/errors.hpp"

namespace ratlen {

/// Piecewise-linear curve in the plane. Consecutive duplicates (within 1e-14)
/// are merged at construction; if fewer than two distinct vertices remain the
/// polyline is degenerate (a point) and has length zero.
class Polyline {
public:
    Polyline(std::vector<cplx> vertices, bool closed) : closed_(closed) {
        if (vertices.empty()) throw MalformedFunction("polyline needs at least one vertex");
        constexpr double merge_tol = 1e-14;
        for (const cplx& v : vertices) {
            if (vertices_.empty() || std::abs(v - vertices_.back()) > merge_tol)
                vertices_.push_back(v);
        }
        if (closed_ && vertices_.size() > 1 &&
            std::abs(vertices_.front() - vertices_.back()) <= merge_tol)
            vertices_.pop_back();
        if (vertices_.size() < 2) {
            degenerate_ = true;
            closed_ = false;
        }
    }

    const std::vector<cplx>& vertices() const { return vertices_; }
    bool closed() const { return closed_; }
    bool degenerate() const { return degenerate_; }

    std::size_t segment_count() const {
        if (degenerate_) return 0;
        return closed_ ? vertices_.size() : vertices_.size() - 1;
    }

    double length() const {
        if (degenerate_) return 0.0;
        std::vector<double> seg(segment_count());
        for (std::size_t i = 0; i < seg.size(); ++i) {
            const cplx a = vertices_[i];
            const cplx b = vertices_[(i + 1) % vertices_.size()];
            seg[i] = std::abs(b - a);
        }
        return detail::pairwise_sum(std::span<const double>(seg));
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : vertices_) m = std::max(m, std::abs(v));
        return m;
    }

    Polyline scaled(double s) const {
        if (!(s > 0.0)) throw MalformedFunction("polyline scale factor must be positive");
        Polyline p(*this);
        for (cplx& v : p.vertices_) v *= s;
        return p;
    }

private:
    std::vector<cplx> vertices_;
    bool closed_ = false;
    bool degenerate_ = false;
};

/// Finite union of disjoint half-open angular intervals [start, end) on the
/// circle, normalized mod 2pi. A single interval of measure 2pi is the full
/// circle.
class ArcSet {
public:
    explicit ArcSet(std::vector<std::pair<double, double>> intervals) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        if (intervals.empty()) throw MalformedFunction("arc set needs at least one interval");
        for (auto [s, e] : intervals) {
            double len = e - s;
            if (!(len > 0.0)) throw MalformedFunction("arc interval must have positive measure");
            len = std::min(len, two_pi);
            double start = std::fmod(s, two_pi);
            if (start < 0.0) start += two_pi;
            arcs_.emplace_back(start, len);
        }
        validate_disjoint();
        double total = 0.0;
        for (auto [start, len] : arcs_) total += len;
        if (total > two_pi + 1e-9)
            throw MalformedFunction("arc set measure exceeds the full circle");
    }

    static ArcSet full_circle() { return ArcSet({{0.0, 2.0 * std::numbers::pi}}); }

    /// (start, length) pairs, start normalized into [0, 2pi).
    const std::vector<std::pair<double, double>>& arcs() const { return arcs_; }

    bool is_full_circle() const {
        return arcs_.size() == 1 && arcs_[0].second >= 2.0 * std::numbers::pi - 1e-12;
    }

    double measure() const {
        double total = 0.0;
        for (auto [start, len] : arcs_) total += len;
        return total;
    }

private:
    void validate_disjoint() const {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        // unroll wrap-around arcs into linear pieces of [0, 2pi)
        std::vector<std::pair<double, double>> pieces; // [lo, hi)
        for (auto [start, len] : arcs_) {
            const double end = start + len;
            if (end <= two_pi + 1e-15) {
                pieces.emplace_back(start, end);
            } else {
                pieces.emplace_back(start, two_pi);
                pieces.emplace_back(0.0, end - two_pi);
            }
        }
        std::sort(pieces.begin(), pieces.end());
        for (std::size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i - 1].second > pieces[i].first + 1e-12)
                throw MalformedFunction("arc intervals overlap");
    }

    std::vector<std::pair<double, double>> arcs_;
};

/// Samples f over each arc of E with M points per arc, one open polyline per
/// arc. A full-circle arc set yields a single closed polyline with M equally
/// spaced vertices and no duplicated endpoint.
template <PointMap F>
std::vector<Polyline> image_polylines(const F& f, const ArcSet& E, std::size_t M) {
    if (M < 2) throw MalformedFunction("image sampling needs at least 2 points per arc");
    const auto sample = [&](double theta) -> cplx {
        cplx w;
        try {
            w = f(std::polar(1.0, theta));
        } catch (const Error& e) {
            throw SingularityOnContour(std::string("image sampling failed: ") + e.what());
        }
        if (!(std::isfinite(w.real()) && std::isfinite(w.imag())))
            throw SingularityOnContour("image sampling produced a non-finite value");
        return w;
    };

    std::vector<Polyline> out;
    if (E.is_full_circle()) {
        std::vector<cplx> pts(M);
        for (std::size_t i = 0; i < M; ++i)
            pts[i] = sample(2.0 * std::numbers::pi * static_cast<double>(i) /
                            static_cast<double>(M));
        out.emplace_back(std::move(pts), true);
        return out;
    }
    for (auto [start, len] : E.arcs()) {
        std::vector<cplx> pts(M);
        for (std::size_t i = 0; i < M; ++i)
            pts[i] = sample(start + len * static_cast<double>(i) / static_cast<double>(M - 1));
        out.emplace_back(std::move(pts), false);
    }
    return out;
}

/// Single-polyline form: requires E to be the full circle or one arc.
template <PointMap F>
Polyline image_polyline(const F& f, const ArcSet& E, std::size_t M) {
    auto parts = image_polylines(f, E, M);
    if (parts.size() != 1)
        throw MalformedFunction("arc set has several components; use image_polylines");
    return std::move(parts.front());
}

/// Full-circle convenience overload.
template <PointMap F>
Polyline image_polyline(const F& f, std::size_t M) {
    return image_polyline(f, ArcSet::full_circle(), M);
}

namespace detail {

/// Dead zone for on-the-line vertex classification. Signed distances within
/// crossing_tol of zero are treated as lying on the line.
inline constexpr double crossing_tol = 1e-12;

} // namespace detail

/// Transversal crossings of the line x cos(theta) + y sin(theta) + b = 0 with
/// the polyline. Vertices on the line use the half-open segment rule: a
/// transversal pass through a vertex counts once, a tangent touch counts zero,
/// and a collinear run counts once when the surrounding signs differ.
inline long line_crossings(const Polyline& p, double theta, double b) {
    if (p.degenerate()) return 0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto& v = p.vertices();

    long crossings = 0;
    int first_sign = 0;
    int prev_sign = 0;
    for (const cplx& z : v) {
        const double d = z.real() * c + z.imag() * s + b;
        int sign = 0;
        if (d > detail::crossing_tol)
            sign = 1;
        else if (d < -detail::crossing_tol)
            sign = -1;
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) ++crossings;
        if (first_sign == 0) first_sign = sign;
        prev_sign = sign;
    }
    if (p.closed() && first_sign != 0 && prev_sign != first_sign) ++crossings;
    return crossings;
}

enum class CroftonMode { Grid, MonteCarlo };

/// Deterministic plan for a family of lines parameterized by angle theta in
/// [0, 2pi) and offset b in [-b_max, b_max]. Grid mode uses midpoint rules on
/// both axes; monte-carlo mode draws each line from a stream seeded by
/// seed + line_index so parallel and serial runs agree bit for bit.
struct CroftonSampler {
    std::size_t theta_count = 720;
    std::size_t b_count = 720;
    double b_max = 2.0;
    CroftonMode mode = CroftonMode::Grid;
    std::uint64_t seed = 0;

    void validate() const {
        if (theta_count < 8 || b_count < 8)
            throw MalformedFunction("crofton sampler needs at least 8 angles and 8 offsets");
        if (!(b_max > 0.0)) throw MalformedFunction("crofton offset range must be positive");
    }
};

struct CroftonEstimate {
    double raw_length = 0.0;        ///< quarter of the measure-weighted crossing count
    double normalized_length = 0.0; ///< raw_length / 2pi, comparable with boundary_length
    long max_crossings = 0;
    std::size_t lines_sampled = 0;
};

namespace detail {

inline double mc_uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline CroftonEstimate crofton_grid(const Polyline& p, const CroftonSampler& sampler) {
    const std::size_t T = sampler.theta_count;
    const std::size_t B = sampler.b_count;
    const double b_max = sampler.b_max;
    const double db = 2.0 * b_max / static_cast<double>(B);
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    const std::size_t segs = p.segment_count();

    std::vector<double> proj(n);
    std::vector<long> diff(B + 1);
    std::vector<long> counts(B);
    std::vector<double> theta_totals(T);
    std::vector<std::size_t> dirty;
    long max_crossings = 0;

    const double tol = crossing_tol;
    const auto offset_at = [&](std::size_t j) {
        return -b_max + (static_cast<double>(j) + 0.5) * db;
    };

    for (std::size_t t = 0; t < T; ++t) {
        const double theta =
            2.0 * std::numbers::pi * (static_cast<double>(t) + 0.5) / static_cast<double>(T);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        for (std::size_t i = 0; i < n; ++i) proj[i] = v[i].real() * c + v[i].imag() * s;

        std::fill(diff.begin(), diff.end(), 0L);
        for (std::size_t i = 0; i < segs; ++i) {
            const double a = proj[i];
            const double bnext = proj[(i + 1) % n];
            const double lo = std::min(a, bnext);
            const double hi = std::max(a, bnext);
            // strict sign straddle: b in the open interval (tol - hi, -tol - lo)
            const double bl = tol - hi;
            const double bh = -tol - lo;
            if (!(bh > bl)) continue;
            long j0 = static_cast<long>(std::floor((bl + b_max) / db - 0.5)) + 1;
            long j1 = static_cast<long>(std::ceil((bh + b_max) / db - 0.5)) - 1;
            j0 = std::max(j0, 0L);
            j1 = std::min(j1, static_cast<long>(B) - 1);
            if (j0 > j1) continue;
            ++diff[static_cast<std::size_t>(j0)];
            --diff[static_cast<std::size_t>(j1) + 1];
        }

        // offsets that put a vertex inside (or near) the dead zone are rare;
        // recompute those lines with the exact rule instead of the histogram
        dirty.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const double lo_b = -proj[i] - 2.0 * tol;
            const double hi_b = -proj[i] + 2.0 * tol;
            long jlo = static_cast<long>(std::floor((lo_b + b_max) / db - 0.5));
            long jhi = static_cast<long>(std::ceil((hi_b + b_max) / db - 0.5));
            for (long j = jlo - 1; j <= jhi + 1; ++j)
                if (j >= 0 && j < static_cast<long>(B)) dirty.push_back(static_cast<std::size_t>(j));
        }
        std::sort(dirty.begin(), dirty.end());
        dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());

        long running = 0;
        long theta_sum = 0;
        std::size_t next_dirty = 0;
        for (std::size_t j = 0; j < B; ++j) {
            running += diff[j];
            long count = running;
            if (next_dirty < dirty.size() && dirty[next_dirty] == j) {
                count = line_crossings(p, theta, offset_at(j));
                ++next_dirty;
            }
            counts[j] = count;
            theta_sum += count;
            max_crossings = std::max(max_crossings, count);
        }
        theta_totals[t] = static_cast<double>(theta_sum);
    }

    const double total = pairwise_sum(std::span<const double>(theta_totals));
    const double weight = (2.0 * std::numbers::pi / static_cast<double>(T)) * db * 0.25;
    CroftonEstimate est;
    est.raw_length = total * weight;
    est.normalized_length = est.raw_length / (2.0 * std::numbers::pi);
    est.max_crossings = max_crossings;
    est.lines_sampled = T * B;
    return est;
}

inline CroftonEstimate crofton_monte_carlo(const Polyline& p, const CroftonSampler& sampler) {
    const std::size_t N = sampler.theta_count * sampler.b_count;
    constexpr std::uint64_t stride = 0x9E3779B97F4A7C15ULL;
    std::vector<double> counts(N);
    long max_crossings = 0;
    for (std::size_t i = 0; i < N; ++i) {
        std::mt19937_64 eng(sampler.seed + static_cast<std::uint64_t>(i) * stride);
        const double theta = 2.0 * std::numbers::pi * mc_uniform01(eng);
        const double b = -sampler.b_max + 2.0 * sampler.b_max * mc_uniform01(eng);
        const long count = line_crossings(p, theta, b);
        counts[i] = static_cast<double>(count);
        max_crossings = std::max(max_crossings, count);
    }
    const double mean = pairwise_sum(std::span<const double>(counts)) / static_cast<double>(N);
    CroftonEstimate est;
    est.raw_length = std::numbers::pi * sampler.b_max * mean;
    est.normalized_length = est.raw_length / (2.0 * std::numbers::pi);
    est.max_crossings = max_crossings;
    est.lines_sampled = N;
    return est;
}

} // namespace detail

/// Crofton length estimate with diagnostics: raw arc length as a quarter of
/// the crossing measure, plus the largest crossing count seen on any line.
inline CroftonEstimate crofton_estimate(const Polyline& p, const CroftonSampler& sampler) {
    sampler.validate();
    if (p.degenerate()) {
        CroftonEstimate est;
        est.lines_sampled = sampler.theta_count * sampler.b_count;
        return est;
    }
    if (sampler.b_max < p.max_abs())
        throw InsufficientCoverage("offset range b_max is smaller than the image radius");
    return sampler.mode == CroftonMode::Grid ? detail::crofton_grid(p, sampler)
                                             : detail::crofton_monte_carlo(p, sampler);
}

/// Arc length of the polyline by the Crofton formula (unnormalized; divide by
/// 2pi to compare with the boundary-length functional).
inline double crofton_length(const Polyline& p, const CroftonSampler& sampler) {
    return crofton_estimate(p, sampler).raw_length;
}

} // namespace ratlen
