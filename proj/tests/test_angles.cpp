#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "normgeo/angles.hpp"
#include "normgeo/errors.hpp"
#include "support.hpp"

using namespace normgeo;
using testsupport::catalog;
using testsupport::lp;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("cos_angle examples") {
    const AngleReport a = cos_angle(lp(2, 2), Vector{1.0, 0.0}, Vector{0.0, 1.0});
    CHECK(a.cos_theta == doctest::Approx(0.0));
    CHECK(a.tan_half == doctest::Approx(1.0));
    CHECK(a.theta == doctest::Approx(std::numbers::pi / 2));
    const AngleReport b = cos_angle(lp(3, 2), Vector{1.0, 1.0}, Vector{1.0, 0.0});
    CHECK(b.cos_theta == doctest::Approx(std::pow(2.0, -2.0 / 3.0)).epsilon(1e-13));
    const double c = std::pow(2.0, -2.0 / 3.0);
    CHECK(b.tan_half == doctest::Approx(std::sqrt((1 - c) / (1 + c))).epsilon(1e-13));
    CHECK(std::abs(b.tan_half - 0.47646991601924) <= 1e-12);
    for (const NormSpec& spec : catalog()) {
        Rng rng(derive_seed(1, spec.label()));
        const Vector x = testsupport::spread(rng, spec.dim());
        const AngleReport s = cos_angle(spec, x, x);
        CHECK(s.cos_theta == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.tan_half <= 1e-6);
    }
}

TEST_CASE("cos_angle rejects zero vectors") {
    CHECK_THROWS_AS(cos_angle(lp(2, 2), Vector{0.0, 0.0}, Vector{1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(cos_angle(lp(2, 2), Vector{1.0, 0.0}, Vector{0.0, 0.0}), InvalidArgument);
}

TEST_CASE("tan-half identity") {
    CHECK(tan_half_from_cos(-1.0) == kInf);
    CHECK(tan_half_from_cos(1.0) == 0.0);
    for (double t = 0.01; t < std::numbers::pi; t += 0.01) {
        CHECK(tan_half_from_cos(std::cos(t)) == doctest::Approx(std::tan(t / 2)).epsilon(1e-10));
    }
    const AngleReport opp = cos_angle(lp(3, 2), Vector{1.0, 2.0}, Vector{-2.0, -4.0});
    CHECK(opp.cos_theta == doctest::Approx(-1.0));
    CHECK(opp.tan_half > 1e6);
}

TEST_CASE("extended ratio conventions") {
    CHECK(extended_ratio(0.0, 0.0) == 1.0);
    CHECK(extended_ratio(kInf, kInf) == 1.0);
    CHECK(extended_ratio(2.0, 0.0) == kInf);
    CHECK(extended_ratio(0.0, 2.0) == 0.0);
    CHECK(extended_ratio(2.0, kInf) == 0.0);
    CHECK(extended_ratio(kInf, 2.0) == kInf);
    CHECK(extended_ratio(3.0, 2.0) == 1.5);
}

TEST_CASE("ae_ratio examples") {
    const NormSpec l3 = lp(3, 2);
    CHECK(ae_ratio(l3, l3, Vector{1.0, 0.2}, Vector{-0.3, 1.0}) == doctest::Approx(1.0));
    CHECK(ae_ratio(lp(1, 2), lp(2, 2), Vector{1.0, 0.5}, Vector{1.0, 0.6}) == kInf);
    CHECK(ae_ratio(lp(1, 2), lp(2, 2), Vector{1.0, 0.5}, Vector{1.0, 0.5}) == 1.0);
    CHECK_THROWS_AS(ae_ratio(l3, l3, Vector{0.0, 0.0}, Vector{1.0, 0.0}), InvalidArgument);
}

TEST_CASE("estimate_ae_constant") {
    const EquivEstimate same = estimate_ae_constant(lp(2, 2), lp(2, 2), {.samples = 2000, .seed = 1, .refine_iters = 50});
    CHECK(same.C_lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(same.diverged);
    const EquivEstimate d = estimate_ae_constant(lp(1, 2), lp(2, 2), {.samples = 2000, .seed = 1, .refine_iters = 50, .cap = 1e3});
    CHECK(d.diverged);
    CHECK(d.C_lower > 1e3);
    CHECK(d.witness_x[0] * d.witness_y[0] > 0.0);
    CHECK(d.witness_x[1] * d.witness_y[1] > 0.0);
    CHECK(ae_ratio(lp(1, 2), lp(2, 2), d.witness_x, d.witness_y) == d.C_lower);
}

TEST_CASE("unrefined estimate is monotone in samples and deterministic") {
    double prev = 0.0;
    for (std::size_t n : {100u, 400u, 1600u}) {
        const EquivEstimate e = estimate_ae_constant(lp(3, 2), lp(1.5, 2), {.samples = n, .seed = 9, .refine_iters = 0});
        CHECK(e.C_lower >= prev);
        prev = e.C_lower;
        const EquivEstimate again = estimate_ae_constant(lp(3, 2), lp(1.5, 2), {.samples = n, .seed = 9, .refine_iters = 0});
        CHECK(again.C_lower == e.C_lower);
        CHECK(again.witness_x == e.witness_x);
    }
}
