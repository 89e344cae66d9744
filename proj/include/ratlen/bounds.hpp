#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ratlen/circle_grid.hpp"
#include "ratlen/quadrature.hpp"
#include "ratlen/rational.hpp"

namespace ratlen {

/// One function's boundary length measured against every classical bound:
/// the degree bound l <= n * sup-norm, the area-energy bound
/// l <= 6 sqrt(n) sqrt(E2), and the univalent bound l <= 6 pi sqrt(n).
/// Ratios are stored as measured/bound, so values <= 1 certify the bound.
/// Fields whose hypotheses fail (poles in the disk, no univalence
/// certificate, sup-norm above 1) are left empty rather than guessed.
struct BoundReport {
    int degree = 0;
    double boundary_length = 0.0;
    double sup_norm = 0.0;
    std::optional<double> disk_energy;
    double dolzhenko_ratio = 0.0;
    std::optional<double> prop1_ratio;
    std::optional<double> univalent_upper_ratio;
    bool univalence_certified = false;
};

/// Integral means of |f'| along a radius schedule, for growth-exponent fits.
struct MeansProfile {
    double t = 1.0;
    std::vector<std::pair<double, double>> samples; // (r, M_t[f'](r)), r increasing
};

template <AnalyticMap F>
MeansProfile means_profile(const F& f, double t, const std::vector<double>& radii,
                           const CircleGrid& grid) {
    MeansProfile profile;
    profile.t = t;
    double prev = 0.0;
    for (double r : radii) {
        if (!(r > prev && r < 1.0))
            throw MalformedFunction("radius schedule must increase strictly inside (0, 1)");
        prev = r;
        profile.samples.emplace_back(r, circle_integral_means(f, t, r, grid));
    }
    return profile;
}

/// Measure boundary length, sup norm, and disk energy independently and fill
/// every applicable ratio. The univalence certificate is an input: this
/// module never certifies by itself, it only gates the 6 pi sqrt(n) column on
/// the flag plus the sup-norm <= 1 hypothesis.
template <AnalyticMap F>
BoundReport verify_bounds(const F& R, std::optional<bool> univalence_certified,
                          const CircleGrid& grid) {
    BoundReport report;
    report.degree = R.degree();
    report.boundary_length = boundary_length(R, grid);
    report.sup_norm = sup_norm_circle(R, grid);
    report.univalence_certified = univalence_certified.value_or(false);

    const int n = report.degree;
    if (n == 0) {
        report.disk_energy = 0.0;
        report.prop1_ratio = 0.0;
        return report;
    }

    if (report.sup_norm > 0.0)
        report.dolzhenko_ratio = report.boundary_length / (n * report.sup_norm);

    try {
        const double e2 = disk_energy(R, grid);
        report.disk_energy = e2;
        if (e2 > 0.0)
            report.prop1_ratio =
                report.boundary_length / (6.0 * std::sqrt(static_cast<double>(n)) * std::sqrt(e2));
        else
            report.prop1_ratio = 0.0;
    } catch (const PoleInDisk&) {
        // hypothesis of the energy bound fails; leave the fields empty
    }

    if (report.univalence_certified && report.sup_norm <= 1.0 + 1e-9)
        report.univalent_upper_ratio =
            report.boundary_length / (6.0 * std::numbers::pi * std::sqrt(static_cast<double>(n)));
    return report;
}

} // namespace ratlen
