#include "normgeo/angles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "normgeo/errors.hpp"
#include "normgeo/search.hpp"

namespace normgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClampSlack = 1e-12;

void require_nonzero(const Vector& v, const char* name) {
    if (v.is_zero()) throw InvalidArgument(std::string("norm angle undefined: ") + name + " is the zero vector");
}

}  // namespace

double tan_half_from_cos(double c) {
    if (c <= -1.0) return kInf;
    if (c >= 1.0) return 0.0;
    return std::sqrt((1.0 - c) / (1.0 + c));
}

AngleReport cos_angle(const NormSpec& spec, const Vector& x, const Vector& y) {
    return cos_angle(spec, x, y, default_tol(spec));
}

AngleReport cos_angle(const NormSpec& spec, const Vector& x, const Vector& y, double tol) {
    require_nonzero(x, "x");
    require_nonzero(y, "y");
    const GReport g = g_functional(spec, x, y, tol);
    double c = g.g / (evaluate(spec, x) * evaluate(spec, y));
    if (!std::isfinite(c)) throw NumericalError("non-finite norm-angle cosine");
    if (c > 1.0 + kClampSlack || c < -1.0 - kClampSlack) {
        throw NumericalError("norm-angle cosine outside [-1, 1] beyond rounding: " + std::to_string(c));
    }
    c = std::clamp(c, -1.0, 1.0);
    return {c, std::acos(c), tan_half_from_cos(c), g.method};
}

double extended_ratio(double num, double den) {
    const bool num_zero = num == 0.0, den_zero = den == 0.0;
    const bool num_inf = std::isinf(num), den_inf = std::isinf(den);
    if (num_zero && den_zero) return 1.0;
    if (num_inf && den_inf) return 1.0;
    if (den_zero || num_inf) return kInf;
    if (num_zero || den_inf) return 0.0;
    return num / den;
}

double ae_ratio(const NormSpec& spec1, const NormSpec& spec2, const Vector& x, const Vector& y) {
    if (spec1.dim() != spec2.dim()) throw DimensionMismatch(spec1.dim(), spec2.dim());
    const double t1 = cos_angle(spec1, x, y).tan_half;
    const double t2 = cos_angle(spec2, x, y).tan_half;
    return extended_ratio(t2, t1);
}

EquivEstimate estimate_ae_constant(const NormSpec& spec1, const NormSpec& spec2, const AeOptions& opt) {
    if (spec1.dim() != spec2.dim()) throw DimensionMismatch(spec1.dim(), spec2.dim());
    if (opt.samples == 0) throw InvalidArgument("samples must be at least 1");
    if (!(opt.cap > 1.0)) throw InvalidArgument("cap must exceed 1");

    const search::PairObjective ratio = [&](const Vector& x, const Vector& y) { return ae_ratio(spec1, spec2, x, y); };
    const std::vector<Vector> pts = sample_sphere(spec1, 2 * opt.samples, opt.seed);
    search::PairResult best{pts[0], pts[1], ratio(pts[0], pts[1])};
    for (std::size_t i = 1; i < opt.samples; ++i) {
        const double r = ratio(pts[2 * i], pts[2 * i + 1]);
        if (r > best.value) best = {pts[2 * i], pts[2 * i + 1], r};
    }
    if (opt.refine_iters > 0 && best.value < kInf) {
        best = search::climb_pair(spec1, ratio, best, opt.refine_iters, 0.25, 1e-15);
    }
    // The reported value is re-evaluated at the witness so the two always agree.
    const double c = ratio(best.x, best.y);
    return {c, best.x, best.y, c > opt.cap, opt.samples, opt.refine_iters, opt.cap};
}

}  // namespace normgeo
