#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ratlen/crofton.hpp"
#include "ratlen/rational.hpp"
#include "support/oracles.hpp"

using ratlen::ArcSet;
using ratlen::cplx;
using ratlen::CroftonMode;
using ratlen::CroftonSampler;
using ratlen::Polyline;
using ratlen::RationalFunction;
using Catch::Approx;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

CroftonSampler grid_sampler(std::size_t t, std::size_t b, double b_max) {
    CroftonSampler s;
    s.theta_count = t;
    s.b_count = b;
    s.b_max = b_max;
    return s;
}

} // namespace

TEST_CASE("polyline construction: dedupe, degeneracy, length") {
    Polyline square({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, true);
    REQUIRE(square.vertices().size() == 4);
    REQUIRE(square.length() == Approx(4.0 * std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(square.max_abs() == Approx(1.0));

    Polyline point({{0.3, 0.4}, {0.3, 0.4}, {0.3, 0.4}}, true);
    REQUIRE(point.degenerate());
    REQUIRE(point.length() == 0.0);

    Polyline dup({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {2, 0}}, false);
    REQUIRE(dup.vertices().size() == 3);
    REQUIRE(dup.length() == Approx(2.0));

    // closed polyline with explicitly repeated endpoint collapses the seam
    Polyline seam({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}}, true);
    REQUIRE(seam.vertices().size() == 4);

    REQUIRE(square.scaled(2.0).length() == Approx(8.0 * std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE_THROWS_AS(square.scaled(0.0), ratlen::MalformedFunction);
}

TEST_CASE("arc sets: normalization, disjointness, measure") {
    REQUIRE(ArcSet::full_circle().is_full_circle());
    REQUIRE(ArcSet::full_circle().measure() == Approx(two_pi));

    // wrap-around arc plus a separate arc: disjoint after normalization
    ArcSet wrapped({{1.5 * std::numbers::pi, 2.5 * std::numbers::pi},
                    {0.5 * std::numbers::pi, std::numbers::pi}});
    REQUIRE_FALSE(wrapped.is_full_circle());
    REQUIRE(wrapped.measure() == Approx(1.5 * std::numbers::pi));

    REQUIRE_THROWS_AS(ArcSet({{0.0, 1.0}, {0.5, 1.5}}), ratlen::MalformedFunction);
    REQUIRE_THROWS_AS(ArcSet({{1.0, 1.0}}), ratlen::MalformedFunction);
    REQUIRE_THROWS_AS(ArcSet({{0.0, 5.0}, {5.5, 8.0}}), ratlen::MalformedFunction);
}

TEST_CASE("image polylines: inscribed polygons and degenerate images") {
    const auto id = RationalFunction::identity();
    const auto square = ratlen::image_polyline(id, 4);
    REQUIRE(square.closed());
    REQUIRE(square.length() == Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));

    const auto flat = ratlen::image_polyline(RationalFunction::constant({0.2, -0.7}), 64);
    REQUIRE(flat.degenerate());
    REQUIRE(flat.length() == 0.0);

    double prev = 0.0;
    for (std::size_t m : {64, 128, 256}) {
        const double len = ratlen::image_polyline(id, m).length();
        REQUIRE(len > prev);
        REQUIRE(len < two_pi);
        prev = len;
    }
    REQUIRE(prev == Approx(two_pi).epsilon(1e-3));

    // a single half-circle arc yields an open polyline of length ~pi
    ArcSet half({{0.0, std::numbers::pi}});
    const auto arc = ratlen::image_polyline(id, half, 512);
    REQUIRE_FALSE(arc.closed());
    REQUIRE(arc.length() == Approx(std::numbers::pi).epsilon(1e-2));

    // two arcs: one open polyline each, single-result form refuses
    ArcSet pair({{0.0, 1.0}, {2.0, 3.0}});
    const auto parts = ratlen::image_polylines(id, pair, 16);
    REQUIRE(parts.size() == 2);
    REQUIRE_FALSE(parts[0].closed());
    REQUIRE_THROWS_AS(ratlen::image_polyline(id, pair, 16), ratlen::MalformedFunction);

    const ratlen::CallableMap bad{
        [](cplx) -> cplx { throw ratlen::PoleProximity("contour hit"); },
        [](cplx) -> cplx { return 0.0; },
    };
    REQUIRE_THROWS_AS(ratlen::image_polyline(bad, 16), ratlen::SingularityOnContour);
}

TEST_CASE("line crossings: diameters, misses, vertex rules") {
    const auto circle = ratlen::image_polyline(RationalFunction::identity(), 512);
    REQUIRE(ratlen::line_crossings(circle, 0.0, 0.0) == 2);
    REQUIRE(ratlen::line_crossings(circle, 1.1, 0.4) == 2);
    REQUIRE(ratlen::line_crossings(circle, 0.0, 2.0) == 0);
    REQUIRE(ratlen::line_crossings(circle, 0.0, -2.0) == 0);

    // transversal pass exactly through a vertex: one crossing
    Polyline through({{-1, -1}, {0, 0}, {1, 1}}, false);
    REQUIRE(ratlen::line_crossings(through, 0.0, 0.0) == 1);
    // tangent touch at a vertex: zero crossings
    Polyline touch({{-1, 1}, {0, 0}, {-1, -1}}, false);
    REQUIRE(ratlen::line_crossings(touch, 0.0, 0.0) == 0);
    // collinear run counts once iff the surrounding signs differ
    Polyline run_cross({{-1, 0}, {0, 0.2}, {0, 0.8}, {1, 1}}, false);
    REQUIRE(ratlen::line_crossings(run_cross, 0.0, 0.0) == 1);
    Polyline run_touch({{-1, 0}, {0, 0.2}, {0, 0.8}, {-1, 1}}, false);
    REQUIRE(ratlen::line_crossings(run_touch, 0.0, 0.0) == 0);
}

TEST_CASE("line crossings obey the 2n bound on monomial images") {
    const int n = 5;
    const auto image = ratlen::image_polyline(RationalFunction::power(n), 4096);
    oracles::Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double theta = two_pi * rng.uniform01();
        const double b = rng.uniform(-1.2, 1.2);
        REQUIRE(ratlen::line_crossings(image, theta, b) <= 2 * n);
    }
}

TEST_CASE("crofton length: circle and segment closed forms") {
    const auto circle = ratlen::image_polyline(RationalFunction::identity(), 2048);
    const double est = ratlen::crofton_length(circle, grid_sampler(720, 720, 2.0));
    REQUIRE(est == Approx(two_pi).epsilon(0.01));

    Polyline segment({{0, 0}, {1, 0}}, false);
    const double seg = ratlen::crofton_length(segment, grid_sampler(720, 720, 1.25));
    REQUIRE(seg == Approx(1.0).epsilon(0.01));
}

TEST_CASE("crofton grid mode scales exactly with the polyline") {
    const auto square = ratlen::image_polyline(RationalFunction::identity(), 4);
    const auto base = ratlen::crofton_estimate(square, grid_sampler(64, 64, 1.5));
    const auto doubled = ratlen::crofton_estimate(square.scaled(2.0), grid_sampler(64, 64, 3.0));
    REQUIRE(doubled.raw_length == 2.0 * base.raw_length);
    REQUIRE(doubled.max_crossings == base.max_crossings);
}

TEST_CASE("grid histogram agrees exactly with per-line counting") {
    oracles::Rng rng(551);
    auto f = oracles::random_poly_ratio(rng, 4, 0.3, false);
    std::vector<Polyline> cases;
    cases.push_back(ratlen::image_polyline(f, 64));
    std::vector<cplx> walk{{0.0, 0.0}};
    for (int i = 0; i < 40; ++i)
        walk.push_back(walk.back() + cplx{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
    cases.emplace_back(walk, false);

    for (const auto& p : cases) {
        const auto sampler = grid_sampler(16, 16, 1.5 * p.max_abs() + 0.5);
        const auto est = ratlen::crofton_estimate(p, sampler);
        const double db = 2.0 * sampler.b_max / static_cast<double>(sampler.b_count);
        long total = 0;
        long max_count = 0;
        for (std::size_t t = 0; t < sampler.theta_count; ++t) {
            const double theta = two_pi * (static_cast<double>(t) + 0.5) /
                                 static_cast<double>(sampler.theta_count);
            for (std::size_t j = 0; j < sampler.b_count; ++j) {
                const double b = -sampler.b_max + (static_cast<double>(j) + 0.5) * db;
                const long c = ratlen::line_crossings(p, theta, b);
                total += c;
                max_count = std::max(max_count, c);
            }
        }
        const double weight =
            (two_pi / static_cast<double>(sampler.theta_count)) * db * 0.25;
        REQUIRE(est.max_crossings == max_count);
        REQUIRE(est.raw_length == Approx(static_cast<double>(total) * weight).epsilon(1e-13));
        REQUIRE(std::lround(est.raw_length / weight) == total);
    }
}

TEST_CASE("monte-carlo mode: deterministic under the seed, accurate on the circle") {
    const auto circle = ratlen::image_polyline(RationalFunction::identity(), 512);
    CroftonSampler mc = grid_sampler(128, 128, 2.0);
    mc.mode = CroftonMode::MonteCarlo;
    mc.seed = 7;
    const auto a = ratlen::crofton_estimate(circle, mc);
    const auto b = ratlen::crofton_estimate(circle, mc);
    REQUIRE(a.raw_length == b.raw_length);
    REQUIRE(a.max_crossings == b.max_crossings);
    REQUIRE(a.raw_length == Approx(two_pi).epsilon(0.1));
    REQUIRE(a.normalized_length == a.raw_length / two_pi);

    mc.seed = 8;
    REQUIRE(ratlen::crofton_estimate(circle, mc).raw_length != a.raw_length);
}

TEST_CASE("crofton guards: coverage and sampler validation") {
    const auto circle = ratlen::image_polyline(RationalFunction::identity(), 256);
    REQUIRE_THROWS_AS(ratlen::crofton_length(circle, grid_sampler(64, 64, 0.5)),
                      ratlen::InsufficientCoverage);
    REQUIRE_THROWS_AS(ratlen::crofton_length(circle, grid_sampler(4, 64, 2.0)),
                      ratlen::MalformedFunction);
    REQUIRE_THROWS_AS(ratlen::crofton_length(circle, grid_sampler(64, 4, 2.0)),
                      ratlen::MalformedFunction);

    const auto degenerate = ratlen::image_polyline(RationalFunction::constant({0.5, 0.5}), 64);
    const auto est = ratlen::crofton_estimate(degenerate, grid_sampler(64, 64, 0.25));
    REQUIRE(est.raw_length == 0.0);
    REQUIRE(est.max_crossings == 0);
}
