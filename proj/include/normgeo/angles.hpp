#pragma once

#include <cstdint>

#include "normgeo/gfunctional.hpp"
#include "normgeo/norms.hpp"

namespace normgeo {

/// Norm angle from x to y: cos(theta) = g(x, y) / (||x|| ||y||).
struct AngleReport {
    double cos_theta;  ///< in [-1, 1]
    double theta;      ///< in [0, pi]
    double tan_half;   ///< tan(theta / 2) in [0, +inf]; +inf exactly when cos_theta = -1
    GMethod method;
};

/// tan(theta/2) = sqrt((1 - c) / (1 + c)), +inf at c = -1.
double tan_half_from_cos(double cos_theta);

AngleReport cos_angle(const NormSpec& spec, const Vector& x, const Vector& y);
AngleReport cos_angle(const NormSpec& spec, const Vector& x, const Vector& y, double tol);

/// tan(b/2) / tan(a/2) on the extended half-line with
/// 0/0 = 1, inf/inf = 1, t/0 = inf, 0/t = 0, t/inf = 0, inf/t = inf.
double extended_ratio(double numerator, double denominator);

/// tan(theta_2(x,y)/2) / tan(theta_1(x,y)/2) under extended_ratio conventions.
double ae_ratio(const NormSpec& spec1, const NormSpec& spec2, const Vector& x, const Vector& y);

/// Witnessed lower bound on the angular-equivalence constant C in
/// tan(theta_2/2) <= C tan(theta_1/2).
struct EquivEstimate {
    double C_lower;  ///< attained by the witness pair; may be +inf
    Vector witness_x;
    Vector witness_y;
    bool diverged;   ///< C_lower > cap: no finite C found up to cap (not a proof)
    std::size_t samples_used;
    std::size_t refine_iters;
    double cap;
};

struct AeOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    std::size_t refine_iters = 200;
    double cap = 1e6;
};

/// Max of ae_ratio over pairs from sample_sphere(spec1), then coordinate hill
/// climbing of the best pair. The first k sampled pairs do not depend on
/// `samples`, so with refine_iters = 0 the estimate is monotone in samples.
EquivEstimate estimate_ae_constant(const NormSpec& spec1, const NormSpec& spec2, const AeOptions& opt);

}  // namespace normgeo
