#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ratlen/experiments.hpp"
#include "ratlen/factory.hpp"
#include "ratlen/maps.hpp"
#include "support/oracles.hpp"

using ratlen::cplx;
using ratlen::GrowthRecord;
using ratlen::RationalFunction;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

GrowthRecord synth(int degree, double normalized_length, bool certified = true) {
    GrowthRecord rec;
    rec.degree = degree;
    rec.normalized_length = normalized_length;
    rec.length = normalized_length;
    rec.sup_norm = 1.0;
    rec.certified = certified;
    return rec;
}

} // namespace

TEST_CASE("fit_gamma: exact on planted power laws") {
    std::vector<GrowthRecord> linear;
    for (int n : {2, 4, 8, 16}) linear.push_back(synth(n, static_cast<double>(n)));
    const auto f1 = ratlen::fit_gamma(linear);
    REQUIRE(f1.slope == Approx(1.0).margin(1e-12));
    REQUIRE(f1.intercept == Approx(0.0).margin(1e-12));
    REQUIRE(f1.rms < 1e-12);
    REQUIRE(f1.count == 4);
    REQUIRE(f1.degree_range.first == 2);
    REQUIRE(f1.degree_range.second == 16);

    std::vector<GrowthRecord> powerlaw;
    for (int n : {2, 3, 5, 8, 13}) powerlaw.push_back(synth(n, 3.0 * std::pow(n, 0.4)));
    const auto f2 = ratlen::fit_gamma(powerlaw);
    REQUIRE(f2.slope == Approx(0.4).margin(1e-6));
    REQUIRE(f2.intercept == Approx(std::log(3.0)).margin(1e-9));

    std::vector<GrowthRecord> flat;
    for (int n : {2, 4, 8}) flat.push_back(synth(n, 7.0));
    REQUIRE(ratlen::fit_gamma(flat).slope == Approx(0.0).margin(1e-12));
}

TEST_CASE("fit_gamma: filtering and failure modes") {
    // an uncertified outlier must not perturb the fit
    std::vector<GrowthRecord> mixed;
    for (int n : {2, 4, 8}) mixed.push_back(synth(n, static_cast<double>(n)));
    mixed.push_back(synth(16, 1e6, false));
    const auto fit = ratlen::fit_gamma(mixed);
    REQUIRE(fit.slope == Approx(1.0).margin(1e-12));
    REQUIRE(fit.count == 3);
    REQUIRE(fit.degree_range.second == 8);

    std::vector<GrowthRecord> two;
    two.push_back(synth(2, 2.0));
    two.push_back(synth(4, 4.0));
    REQUIRE_THROWS_AS(ratlen::fit_gamma(two), ratlen::InsufficientData);

    std::vector<GrowthRecord> dupes;
    dupes.push_back(synth(2, 2.0));
    dupes.push_back(synth(2, 2.1));
    dupes.push_back(synth(4, 4.0));
    REQUIRE_THROWS_AS(ratlen::fit_gamma(dupes), ratlen::InsufficientData);

    std::vector<GrowthRecord> uncertified;
    for (int n : {2, 4, 8, 16}) uncertified.push_back(synth(n, static_cast<double>(n), false));
    REQUIRE_THROWS_AS(ratlen::fit_gamma(uncertified), ratlen::InsufficientData);

    REQUIRE_THROWS_AS(ratlen::fit_gamma({}), ratlen::InsufficientData);
}

TEST_CASE("run_growth_family: monomial sharpness family") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto records = ratlen::run_growth_family(
        [](int n) { return RationalFunction::power(n); }, {4, 2, 8}, grid);

    REQUIRE(records.size() == 3);
    const int expected[] = {2, 4, 8};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        REQUIRE(r.degree == expected[i]);
        // z^n attains the degree bound with equality
        REQUIRE(r.bounds.dolzhenko_ratio == Approx(1.0).epsilon(1e-9));
        REQUIRE(r.sup_norm == Approx(1.0).epsilon(1e-9));
        REQUIRE(r.length == Approx(static_cast<double>(r.degree)).epsilon(1e-9));
        REQUIRE(r.normalized_length == Approx(r.length).epsilon(1e-12));
        // n-to-1 on the disk: winding n, certificate fails, record kept
        REQUIRE_FALSE(r.certified);
        REQUIRE(r.certificate.winding == r.degree);
        REQUIRE_FALSE(r.bounds.univalent_upper_ratio.has_value());
    }
    // nothing certified, so the fit has nothing to work with
    REQUIRE_THROWS_AS(ratlen::fit_gamma(records), ratlen::InsufficientData);
}

TEST_CASE("run_growth_family: kayumov family is certified and obeys the bounds") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto records = ratlen::run_growth_family(
        [](int n) {
            return ratlen::kayumov_truncate(ratlen::koebe_coefficients(n), {.n = n});
        },
        {16, 32, 64}, grid);

    REQUIRE(records.size() == 3);
    for (const auto& r : records) {
        REQUIRE(r.certified);
        REQUIRE(r.certificate.winding == 1);
        REQUIRE(r.bounds.dolzhenko_ratio <= 1.0 + 1e-9);
        REQUIRE(r.bounds.prop1_ratio.has_value());
        REQUIRE(*r.bounds.prop1_ratio <= 1.0 + 1e-9);
        REQUIRE(r.bounds.univalent_upper_ratio.has_value());
        REQUIRE(*r.bounds.univalent_upper_ratio <= 1.0);
    }

    const auto fit = ratlen::fit_gamma(records);
    const auto verdict = ratlen::compare_window(fit);
    REQUIRE_FALSE(verdict.violates_upper_bound);
    REQUIRE(fit.degree_range == std::pair<int, int>{16, 64});
}

TEST_CASE("run_growth_family: normalization invariance") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto base = [](int n) {
        return ratlen::kayumov_truncate(ratlen::koebe_coefficients(n), {.n = n});
    };
    const auto scaled = [&](int n) { return base(n).scaled(cplx{137.0, 0.0}); };

    const auto r0 = ratlen::run_growth_family(base, {16}, grid).front();
    const auto r1 = ratlen::run_growth_family(scaled, {16}, grid).front();

    REQUIRE(r1.sup_norm == Approx(137.0 * r0.sup_norm).epsilon(1e-12));
    REQUIRE(r1.length == Approx(137.0 * r0.length).epsilon(1e-12));
    REQUIRE(r1.normalized_length == Approx(r0.normalized_length).epsilon(1e-12));
    REQUIRE(r1.bounds.dolzhenko_ratio == Approx(r0.bounds.dolzhenko_ratio).epsilon(1e-12));
    REQUIRE(*r1.bounds.prop1_ratio == Approx(*r0.bounds.prop1_ratio).epsilon(1e-12));
    REQUIRE(r1.certified == r0.certified);
}

TEST_CASE("run_growth_family: failure modes and diagnostics records") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto id_gen = [](int) { return RationalFunction::identity(); };

    REQUIRE_THROWS_AS(ratlen::run_growth_family(id_gen, {}, grid), ratlen::EmptyFamily);

    const auto broken = [](int n) -> RationalFunction {
        if (n == 32) throw std::runtime_error("pipe burst");
        return RationalFunction::power(n);
    };
    REQUIRE_THROWS_WITH(ratlen::run_growth_family(broken, {16, 32}, grid),
                        ContainsSubstring("degree 32") && ContainsSubstring("pipe burst"));

    const auto vanishing = [](int) { return RationalFunction::constant({0.0, 0.0}); };
    REQUIRE_THROWS_AS(ratlen::run_growth_family(vanishing, {4}, grid), ratlen::GeneratorFailure);

    // a member with a pole inside the disk cannot be certified or given an
    // energy bound, but its boundary measurements still land in the record
    const auto inner_pole = [](int) {
        return RationalFunction::poly_ratio({{1.0, 0.0}}, {{-0.5, 0.0}, {1.0, 0.0}});
    };
    const auto rec = ratlen::run_growth_family(inner_pole, {1}, grid).front();
    REQUIRE_FALSE(rec.certified);
    REQUIRE(rec.certificate.indeterminate);
    REQUIRE_FALSE(rec.bounds.disk_energy.has_value());
    REQUIRE(rec.length > 0.0);
    REQUIRE(rec.bounds.dolzhenko_ratio > 0.0);
}

TEST_CASE("estimate_beta: closed-form exponents") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto schedule = ratlen::default_radius_schedule();
    REQUIRE(schedule.size() == 11);
    REQUIRE(schedule.front() == 0.875);
    REQUIRE(schedule.back() == 1.0 - std::pow(2.0, -13));

    const auto id = ratlen::estimate_beta(RationalFunction::identity(), 1.0, schedule, grid);
    REQUIRE(id.beta == Approx(0.0).margin(1e-9));
    REQUIRE(id.rms < 1e-9);

    const auto koebe = ratlen::estimate_beta(ratlen::KoebeMap{}, 1.0, schedule, grid);
    REQUIRE(koebe.beta == Approx(2.0).margin(0.1));
    REQUIRE(koebe.profile.samples.size() == schedule.size());
    REQUIRE(koebe.profile.samples.front().first == schedule.front());

    const auto moebius = ratlen::estimate_beta(ratlen::MobiusMap{}, 1.0, schedule, grid);
    REQUIRE(moebius.beta == Approx(0.0).margin(0.05));
}

TEST_CASE("estimate_beta: sanity properties") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto schedule = ratlen::default_radius_schedule();

    // never meaningfully negative for analytic maps
    REQUIRE(ratlen::estimate_beta(RationalFunction::power(2), 1.0, schedule, grid).beta >= -0.05);
    REQUIRE(ratlen::estimate_beta(RationalFunction::power(5), 1.0, schedule, grid).beta >= -0.05);
    REQUIRE(ratlen::estimate_beta(ratlen::MobiusMap{}, 1.0, schedule, grid).beta >= -0.05);

    // extending the schedule toward 1 sharpens the Koebe estimate upward
    std::vector<double> shorter(schedule.begin(), schedule.begin() + 7); // k = 3..9
    const double b_short = ratlen::estimate_beta(ratlen::KoebeMap{}, 1.0, shorter, grid).beta;
    const double b_full = ratlen::estimate_beta(ratlen::KoebeMap{}, 1.0, schedule, grid).beta;
    REQUIRE(b_full > b_short);
    REQUIRE(b_full <= 2.0 + 1e-6);
}

TEST_CASE("estimate_beta: schedule validation") {
    const auto grid = ratlen::CircleGrid::unit();
    const auto id = RationalFunction::identity();

    REQUIRE_THROWS_AS(ratlen::estimate_beta(id, 1.0, {0.5, 0.9}, grid),
                      ratlen::InsufficientData);
    REQUIRE_THROWS_AS(ratlen::estimate_beta(id, 1.0, {0.5, 0.5, 0.6}, grid),
                      ratlen::MalformedFunction);
    REQUIRE_THROWS_AS(ratlen::estimate_beta(id, 1.0, {0.5, 0.9, 1.0}, grid),
                      ratlen::MalformedFunction);
    // a constant has vanishing means at every radius
    REQUIRE_THROWS_AS(
        ratlen::estimate_beta(RationalFunction::constant({2.0, 0.0}), 1.0,
                              ratlen::default_radius_schedule(), grid),
        ratlen::MalformedFunction);
}

TEST_CASE("compare_window: classifications") {
    REQUIRE(ratlen::reference_constants.bb1_lower == 0.23);
    REQUIRE(ratlen::reference_constants.bb1_upper == 0.46);
    REQUIRE(ratlen::reference_constants.gamma0_upper == 0.5);
    REQUIRE(ratlen::reference_constants.carleson_jones_conjecture == 0.25);

    ratlen::GammaFit fit;

    fit.slope = 0.10;
    auto rep = ratlen::compare_window(fit);
    REQUIRE(rep.below_window);
    REQUIRE_FALSE(rep.violates_upper_bound);
    REQUIRE_THAT(rep.classification, ContainsSubstring("below window"));

    fit.slope = 0.30;
    rep = ratlen::compare_window(fit);
    REQUIRE(rep.inside_window);
    REQUIRE_THAT(rep.classification, ContainsSubstring("inside window [0.23, 0.46]"));

    fit.slope = 0.47;
    rep = ratlen::compare_window(fit);
    REQUIRE(rep.above_window);
    REQUIRE_FALSE(rep.violates_upper_bound);
    REQUIRE_THAT(rep.classification, ContainsSubstring("above window"));

    fit.slope = 0.58;
    rep = ratlen::compare_window(fit);
    REQUIRE(rep.violates_upper_bound);
    REQUIRE_THAT(rep.classification, ContainsSubstring("exceeds"));

    // the tolerance edge itself still passes
    fit.slope = 0.55;
    REQUIRE_FALSE(ratlen::compare_window(fit).violates_upper_bound);
}
