#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "ratlen/errors.hpp"

namespace ratlen {

/// Refinement policy for adaptive circle quadratures: the grid is doubled
/// (reusing nodes exactly) up to max_doublings until successive estimates
/// agree to rel_tol.
struct GridRefinement {
    int max_doublings = 14;
    double rel_tol = 1e-10;
};

/// Uniform angular sampling plan driving all circle quadratures.
struct CircleGrid {
    using Refinement = GridRefinement;

    std::size_t node_count = 256;
    double radius = 1.0;
    GridRefinement refinement{};

    CircleGrid() = default;
    CircleGrid(std::size_t nodes, double r, GridRefinement ref = GridRefinement{})
        : node_count(nodes), radius(r), refinement(ref) {
        validate();
    }

    static CircleGrid unit(std::size_t nodes = 256, GridRefinement ref = GridRefinement{}) {
        return CircleGrid(nodes, 1.0, ref);
    }

    void validate() const {
        if (node_count < 16 || (node_count & (node_count - 1)) != 0)
            throw MalformedFunction("grid node count must be a power of two, at least 16");
        if (!(radius > 0.0 && radius <= 1.0))
            throw MalformedFunction("grid radius must lie in (0, 1]");
        if (refinement.max_doublings < 0 || !(refinement.rel_tol > 0.0))
            throw MalformedFunction("grid refinement settings must be positive");
    }

    /// Node j of the current resolution: radius * exp(2 pi i j / node_count).
    std::complex<double> node(std::size_t j) const {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(node_count);
        return std::polar(radius, theta);
    }
};

} // namespace ratlen
