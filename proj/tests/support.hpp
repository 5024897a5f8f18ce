#pragma once

// Shared generators for the unit tests.

#include <cmath>
#include <vector>

#include "normgeo/norms.hpp"
#include "normgeo/rng.hpp"

namespace testsupport {

using normgeo::Exponent;
using normgeo::NormSpec;
using normgeo::Vector;

inline NormSpec lp(double p, std::size_t n) { return NormSpec::lp(Exponent::finite(p), n); }
inline NormSpec linf(std::size_t n) { return NormSpec::lp(Exponent::infinity(), n); }

inline NormSpec hexagon() {
    const double s = std::sqrt(3.0) / 2.0;
    return NormSpec::polyhedral({Vector{1.0, 0.0}, Vector{0.5, s}, Vector{-0.5, s}});
}

/// One spec per catalog variant and regime.
inline std::vector<NormSpec> catalog() {
    return {
        lp(1, 2),
        lp(1.5, 3),
        lp(2, 2),
        lp(3, 2),
        lp(4, 5),
        linf(3),
        NormSpec::weighted_lp(Exponent::finite(3), {1.0, 2.0}),
        NormSpec::weighted_lp(Exponent::infinity(), {0.5, 1.0, 3.0}),
        NormSpec::quadratic({{2.0, 0.5}, {0.5, 1.0}}),
        NormSpec::kt_blend(1.2),
        hexagon(),
        NormSpec::stadium(0.6),
    };
}

inline Vector gaussian(normgeo::Rng& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> c(n);
    for (double& v : c) v = scale * rng.gaussian();
    return Vector(std::move(c));
}

/// Gaussian direction with a log-uniform length in [e^-3, e^3].
inline Vector spread(normgeo::Rng& rng, std::size_t n) {
    return std::exp(rng.uniform(-3.0, 3.0)) * gaussian(rng, n);
}

}  // namespace testsupport
