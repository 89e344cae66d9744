#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "ratlen/rational.hpp"
#include "support/oracles.hpp"

using ratlen::cplx;
using ratlen::RationalFunction;
using Catch::Approx;

TEST_CASE("poly-ratio evaluation: z^2 at 1+i") {
    auto f = RationalFunction::poly_ratio({{0, 0}, {0, 0}, {1, 0}}, {{1, 0}});
    const cplx v = f(cplx{1.0, 1.0});
    REQUIRE(v.real() == Approx(0.0).margin(1e-15));
    REQUIRE(v.imag() == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("pole-basis evaluation: single reciprocal factor at the origin") {
    // m=1, a=0, c1=1, a1=1/2: value at 0 is sqrt(1-1/4)/(1-0) = sqrt(3)/2
    auto f = RationalFunction::pole_basis({0.0, 0.0}, {cplx{0.5, 0.0}}, {cplx{1.0, 0.0}});
    REQUIRE(f(cplx{0.0, 0.0}).real() == Approx(0.8660254037844386).epsilon(1e-15));
    REQUIRE(f(cplx{0.0, 0.0}).imag() == Approx(0.0).margin(1e-16));
}

TEST_CASE("pole proximity raises") {
    auto f = RationalFunction::poly_ratio({{1, 0}}, {{-2, 0}, {1, 0}}); // 1/(z-2)
    REQUIRE_THROWS_AS(f(cplx{2.0, 0.0}), ratlen::PoleProximity);
    auto g = RationalFunction::pole_basis({0, 0}, {cplx{0.5, 0.0}}, {cplx{1.0, 0.0}});
    REQUIRE_THROWS_AS(g(cplx{2.0, 0.0}), ratlen::PoleProximity); // pole at 1/conj(1/2) = 2
}

TEST_CASE("derivative of z^n has modulus n on the circle") {
    for (int n : {1, 3, 8, 17}) {
        auto f = RationalFunction::power(n);
        const cplx zeta = std::polar(1.0, 0.7345 * n);
        REQUIRE(std::abs(f.derivative(zeta)) == Approx(static_cast<double>(n)).epsilon(1e-13));
    }
}

TEST_CASE("constant has zero derivative and degree zero") {
    auto f = RationalFunction::constant(cplx{2.5, -1.0});
    REQUIRE(f.degree() == 0);
    REQUIRE(std::abs(f.derivative(cplx{0.3, 0.2})) == 0.0);
}

TEST_CASE("analytic derivative matches finite differences off the circle") {
    oracles::Rng rng(20240517);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = (trial % 2 == 0) ? oracles::random_pole_basis(rng, 4, 0.6)
                                  : oracles::random_poly_ratio(rng, 6, 0.25, false);
        for (int i = 0; i < 8; ++i) {
            const cplx z = std::polar(0.5, rng.uniform(0.0, 2.0 * std::numbers::pi));
            const cplx fd = oracles::finite_difference([&](cplx w) { return f(w); }, z);
            const cplx an = f.derivative(z);
            REQUIRE(std::abs(an - fd) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("pole-basis and poly-ratio forms agree at 64 random circle points") {
    oracles::Rng rng(777001);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = oracles::random_pole_basis(rng, 6, 0.7);
        auto g = f.to_poly_ratio();
        REQUIRE(g.form() == ratlen::RationalForm::PolyRatio);
        for (int i = 0; i < 64; ++i) {
            const cplx z = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
            const cplx a = f(z), b = g(z);
            REQUIRE(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
            const cplx da = f.derivative(z), db = g.derivative(z);
            REQUIRE(std::abs(da - db) <= 1e-10 * std::max(1.0, std::abs(da)));
        }
    }
}

TEST_CASE("degree bookkeeping") {
    REQUIRE(RationalFunction::power(7).degree() == 7);
    REQUIRE(RationalFunction::poly_ratio({{1, 0}}, {{-2, 0}, {1, 0}}).degree() == 1);
    REQUIRE(RationalFunction::poly_ratio({{0, 0}, {0, 0}, {3, 0}}, {{-2, 0}, {1, 0}}).degree() == 2);
    // trailing exact zeros are trimmed
    REQUIRE(RationalFunction::taylor({{1, 0}, {1, 0}, {0, 0}, {0, 0}}).degree() == 1);
    oracles::Rng rng(5150);
    auto f = oracles::random_pole_basis(rng, 5, 0.6);
    REQUIRE(f.degree() == 5);
    REQUIRE(f.to_poly_ratio().degree() == 5);
}

TEST_CASE("poles accessor") {
    auto f = RationalFunction::pole_basis({0, 0}, {cplx{0.0, 0.0}, cplx{0.5, 0.0}},
                                          {cplx{1.0, 0.0}, cplx{1.0, 0.0}});
    auto ps = f.poles();
    REQUIRE(ps.has_value());
    REQUIRE(ps->size() == 1); // origin basis point contributes no pole
    REQUIRE(std::abs((*ps)[0] - cplx{2.0, 0.0}) < 1e-15);
    REQUIRE(RationalFunction::power(3).poles()->empty());
    REQUIRE_FALSE(RationalFunction::poly_ratio({{1, 0}}, {{-2, 0}, {1, 0}}).poles().has_value());
}

TEST_CASE("scaling is exact on the stored representation") {
    oracles::Rng rng(987);
    auto f = oracles::random_pole_basis(rng, 4, 0.5);
    auto g = f.scaled(cplx{2.0, 0.0});
    const cplx z{0.3, -0.4};
    REQUIRE(std::abs(g(z) - 2.0 * f(z)) < 1e-14 * std::abs(f(z)));
    REQUIRE(std::abs(g.derivative(z) - 2.0 * f.derivative(z)) < 1e-13);
}

TEST_CASE("malformed constructions are rejected") {
    using ratlen::MalformedFunction;
    // size mismatch
    REQUIRE_THROWS_AS(RationalFunction::pole_basis({0, 0}, {cplx{0.5, 0.0}}, {}),
                      MalformedFunction);
    // basis point on/outside the unit circle
    REQUIRE_THROWS_AS(RationalFunction::pole_basis({0, 0}, {cplx{1.0, 0.0}}, {cplx{1, 0}}),
                      MalformedFunction);
    // unsorted moduli
    REQUIRE_THROWS_AS(RationalFunction::pole_basis({0, 0}, {cplx{0.6, 0.0}, cplx{0.2, 0.0}},
                                                   {cplx{1, 0}, cplx{1, 0}}),
                      MalformedFunction);
    // denominator identically zero
    REQUIRE_THROWS_AS(RationalFunction::poly_ratio({{1, 0}}, {{0, 0}, {0, 0}}),
                      MalformedFunction);
    // denominator root on the unit circle: z - 1
    REQUIRE_THROWS_AS(RationalFunction::poly_ratio({{1, 0}}, {{-1, 0}, {1, 0}}),
                      MalformedFunction);
    // denominator root within 1e-9 of the circle
    REQUIRE_THROWS_AS(RationalFunction::poly_ratio({{1, 0}}, {{-(1.0 + 1e-10), 0}, {1, 0}}),
                      MalformedFunction);
}

TEST_CASE("denominator roots comfortably off the circle are accepted") {
    REQUIRE_NOTHROW(RationalFunction::poly_ratio({{1, 0}}, {{-2, 0}, {1, 0}}));
    REQUIRE_NOTHROW(RationalFunction::poly_ratio({{1, 0}}, {{-0.5, 0}, {1, 0}}));
}
