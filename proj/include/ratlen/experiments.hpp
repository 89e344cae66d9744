#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ratlen/bounds.hpp"
#include "ratlen/circle_grid.hpp"
#include "ratlen/errors.hpp"
#include "ratlen/quadrature.hpp"
#include "ratlen/rational.hpp"
#include "ratlen/univalence.hpp"

namespace ratlen {

/// One family member, measured. The length is 1-homogeneous under scaling, so
/// normalized_length = length / sup_norm is the quantity the growth exponent
/// is fitted on; bound ratios are evaluated on the sup-normalized member.
struct GrowthRecord {
    int degree = 0;
    double length = 0.0;            ///< boundary length of the raw member
    double sup_norm = 0.0;          ///< sup norm of the raw member on the circle
    double normalized_length = 0.0; ///< boundary length after sup-normalization
    bool certified = false;
    UnivalenceCertificate certificate;
    BoundReport bounds; ///< measured on the sup-normalized member
};

/// Least-squares growth exponent of log(normalized length) in log(degree).
struct GammaFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0; ///< root-mean-square residual of the fit
    int count = 0;    ///< certified records used
    std::pair<int, int> degree_range{0, 0};
};

/// Published reference points the growth exponent is compared against: the
/// window 0.23 < B_b(1) <= 0.46, the theorem ceiling gamma_0 <= 1/2, and the
/// conjectured value 1/4.
struct ReferenceConstants {
    double bb1_lower = 0.23;
    double bb1_upper = 0.46;
    double gamma0_upper = 0.5;
    double carleson_jones_conjecture = 0.25;
};

inline constexpr ReferenceConstants reference_constants{};

struct GrowthOptions {
    CertMethod method = CertMethod::BoundarySimple;
    std::size_t resolution = 0; ///< 0 selects the per-method default
    double rho = 0.999;         ///< interior radius for the re-derivative method
};

/// Runs one family: for each degree, construct the member, normalize it to
/// unit sup norm, certify univalence of the normalized member, and measure
/// every bound ratio. Members whose certification fails (or throws) are kept
/// with certified = false so downstream fits can exclude them but diagnostics
/// retain the measurements. Records come back sorted by requested degree.
inline std::vector<GrowthRecord> run_growth_family(
    const std::function<RationalFunction(int)>& generator, std::vector<int> degrees,
    const CircleGrid& grid, const GrowthOptions& opts = {}) {
    if (degrees.empty()) throw EmptyFamily("family has no degrees to run");
    std::sort(degrees.begin(), degrees.end());

    std::vector<GrowthRecord> records;
    records.reserve(degrees.size());
    for (int n : degrees) {
        RationalFunction member = RationalFunction::constant({0.0, 0.0});
        try {
            member = generator(n);
        } catch (const std::exception& e) {
            throw GeneratorFailure("family member at degree " + std::to_string(n) +
                                   " failed: " + e.what());
        }

        GrowthRecord rec;
        rec.degree = member.degree();
        rec.sup_norm = sup_norm_circle(member, grid);
        if (!(rec.sup_norm > 0.0))
            throw GeneratorFailure("family member at degree " + std::to_string(n) +
                                   " vanishes on the circle");
        const RationalFunction normalized = member.scaled(cplx{1.0 / rec.sup_norm, 0.0});

        try {
            rec.certificate = certify_univalent(normalized, opts.method, opts.resolution, opts.rho);
            rec.certified = rec.certificate.passed;
        } catch (const Error&) {
            // certification could not even run (pole inside, degenerate image, ...)
            rec.certificate = UnivalenceCertificate{};
            rec.certificate.method = opts.method;
            rec.certificate.indeterminate = true;
            rec.certified = false;
        }

        rec.bounds = verify_bounds(normalized, rec.certified, grid);
        rec.normalized_length = rec.bounds.boundary_length;
        rec.length = rec.normalized_length * rec.sup_norm; // exact 1-homogeneity
        records.push_back(std::move(rec));
    }
    return records;
}

/// Ordinary least squares of log(normalized length) against log(degree) over
/// the certified records; exact on exact power laws.
inline GammaFit fit_gamma(const std::vector<GrowthRecord>& records) {
    std::vector<std::pair<double, double>> pts; // (log n, log normalized length)
    std::vector<int> used_degrees;
    for (const GrowthRecord& r : records) {
        if (!r.certified || r.degree < 1 || !(r.normalized_length > 0.0)) continue;
        pts.emplace_back(std::log(static_cast<double>(r.degree)), std::log(r.normalized_length));
        used_degrees.push_back(r.degree);
    }
    std::sort(used_degrees.begin(), used_degrees.end());
    const auto distinct = std::unique(used_degrees.begin(), used_degrees.end());
    if (std::distance(used_degrees.begin(), distinct) < 3)
        throw InsufficientData("growth fit needs at least 3 certified records "
                               "with distinct degrees");

    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    GammaFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double res = y - (fit.slope * x + fit.intercept);
        ss += res * res;
    }
    fit.rms = std::sqrt(ss / n);
    fit.count = static_cast<int>(pts.size());
    fit.degree_range = {used_degrees.front(), *(distinct - 1)};
    return fit;
}

/// Default radius schedule 1 - 2^-k, k = 3..13 (top radius about 1 - 1.2e-4).
inline std::vector<double> default_radius_schedule() {
    std::vector<double> r;
    for (int k = 3; k <= 13; ++k) r.push_back(1.0 - std::pow(2.0, -k));
    return r;
}

/// Finite-schedule proxy for the integral means exponent beta_f(t): the
/// least-squares slope of log M_t[f'](r) against -log(1 - r). The schedule
/// rides along so the estimate is interpretable.
struct BetaEstimate {
    double beta = 0.0;
    double t = 1.0;
    double intercept = 0.0;
    double rms = 0.0;
    MeansProfile profile; ///< the (r, M_t) samples behind the fit
};

template <AnalyticMap F>
BetaEstimate estimate_beta(const F& f, double t, const std::vector<double>& schedule,
                           const CircleGrid& grid) {
    if (schedule.size() < 3)
        throw InsufficientData("beta estimate needs at least 3 scheduled radii");
    BetaEstimate est;
    est.t = t;
    est.profile = means_profile(f, t, schedule, grid);

    std::vector<std::pair<double, double>> pts;
    for (const auto& [r, M] : est.profile.samples) {
        if (!(M > 0.0))
            throw MalformedFunction("integral means vanished; exponent undefined");
        pts.emplace_back(-std::log(1.0 - r), std::log(M));
    }
    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    est.beta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    est.intercept = (sy - est.beta * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double res = y - (est.beta * x + est.intercept);
        ss += res * res;
    }
    est.rms = std::sqrt(ss / n);
    return est;
}

/// Verdict placing a fitted growth exponent against the reference constants.
/// Only the exceedance of gamma0_upper (plus tolerance) is a failure signal;
/// the position relative to the published window is reported, never asserted.
struct GammaWindowReport {
    double gamma_hat = 0.0;
    bool below_window = false;
    bool inside_window = false;
    bool above_window = false;
    bool violates_upper_bound = false;
    std::string classification;
};

inline GammaWindowReport compare_window(const GammaFit& fit,
                                        const ReferenceConstants& constants = reference_constants,
                                        double tolerance = 0.05) {
    GammaWindowReport report;
    report.gamma_hat = fit.slope;
    report.below_window = fit.slope < constants.bb1_lower;
    report.inside_window = fit.slope >= constants.bb1_lower && fit.slope <= constants.bb1_upper;
    report.above_window = fit.slope > constants.bb1_upper;
    report.violates_upper_bound = fit.slope > constants.gamma0_upper + tolerance;

    char buf[160];
    if (report.violates_upper_bound) {
        std::snprintf(buf, sizeof buf,
                      "gamma_hat %.4f exceeds the univalent growth ceiling %.2f "
                      "(tolerance %.2f): pipeline failure signal",
                      fit.slope, constants.gamma0_upper, tolerance);
    } else if (report.above_window) {
        std::snprintf(buf, sizeof buf,
                      "gamma_hat %.4f above window [%.2f, %.2f] yet within the ceiling %.2f",
                      fit.slope, constants.bb1_lower, constants.bb1_upper,
                      constants.gamma0_upper);
    } else if (report.inside_window) {
        std::snprintf(buf, sizeof buf, "gamma_hat %.4f inside window [%.2f, %.2f]", fit.slope,
                      constants.bb1_lower, constants.bb1_upper);
    } else {
        std::snprintf(buf, sizeof buf,
                      "gamma_hat %.4f below window [%.2f, %.2f]; consistent "
                      "(no family is claimed extremal)",
                      fit.slope, constants.bb1_lower, constants.bb1_upper);
    }
    report.classification = buf;
    return report;
}

} // namespace ratlen
