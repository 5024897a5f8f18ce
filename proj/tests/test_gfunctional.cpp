#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "acceptance/oracles.hpp"
#include "normgeo/errors.hpp"
#include "normgeo/gfunctional.hpp"
#include "support.hpp"

using namespace normgeo;
using testsupport::catalog;
using testsupport::linf;
using testsupport::lp;

TEST_CASE("gateaux examples") {
    const auto e2 = gateaux(lp(2, 2), Vector{1.0, 0.0}, Vector{0.0, 1.0}, 1e-9);
    CHECK(e2.plus == doctest::Approx(0.0));
    CHECK(e2.minus == doctest::Approx(0.0));
    CHECK(e2.method == GMethod::analytic);
    const auto e1 = gateaux(lp(1, 2), Vector{1.0, 0.0}, Vector{0.0, 1.0}, 1e-9);
    CHECK(e1.plus == doctest::Approx(1.0));
    CHECK(e1.minus == doctest::Approx(-1.0));
    const auto ei = gateaux(linf(2), Vector{1.0, 1.0}, Vector{1.0, -1.0}, 1e-9);
    CHECK(ei.plus == doctest::Approx(1.0));
    CHECK(ei.minus == doctest::Approx(-1.0));
    const auto fd = gateaux(lp(1, 2), Vector{1.0, 0.0}, Vector{0.0, 1.0}, 1e-9, Route::numeric);
    CHECK(fd.method == GMethod::finite_difference);
    CHECK(fd.plus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fd.minus == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fd.step_used.has_value());
}

TEST_CASE("gateaux at zero and mismatched dimensions throw") {
    CHECK_THROWS_AS(gateaux(lp(2, 2), Vector{0.0, 0.0}, Vector{1.0, 0.0}, 1e-9), InvalidArgument);
    CHECK_THROWS_AS(gateaux(lp(2, 2), Vector{1.0, 0.0}, Vector{1.0, 0.0, 0.0}, 1e-9), DimensionMismatch);
    CHECK_THROWS_AS(g_functional(lp(2, 2), Vector{1.0, 0.0}, Vector{1.0}, 1e-9), DimensionMismatch);
}

TEST_CASE("g examples") {
    CHECK(g_value(lp(2, 2), Vector{3.0, 4.0}, Vector{4.0, -3.0}, 1e-9) == doctest::Approx(0.0));
    CHECK(g_value(lp(3, 2), Vector{1.0, 1.0}, Vector{1.0, 0.0}, 1e-9) ==
          doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-14));
    const GReport z = g_functional(lp(3, 2), Vector{0.0, 0.0}, Vector{1.0, 2.0}, 1e-9);
    CHECK(z.g == 0.0);
    CHECK(z.g_plus == 0.0);
    CHECK(z.g_minus == 0.0);
    CHECK_FALSE(z.G_plus.has_value());
}

TEST_CASE("l^p closed form matches the oracle formula") {
    Rng rng(21);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        for (std::size_t n : {2u, 5u}) {
            for (int i = 0; i < 200; ++i) {
                const Vector x = testsupport::spread(rng, n);
                const Vector y = testsupport::spread(rng, n);
                const double want = oracle::lp_g(x.values(), y.values(), p);
                const double got = g_value(lp(p, n), x, y, 1e-9);
                CHECK(std::abs(got - want) <= 1e-12 * (oracle::lp_norm(x.values(), p) * oracle::lp_norm(y.values(), p)));
            }
        }
    }
}

TEST_CASE("l1: g is the sgn-weighted sum with sgn(0) = 0") {
    const Vector x{1.0, 0.0, -2.0};
    const Vector y{0.5, 3.0, 1.0};
    CHECK(g_value(lp(1, 3), x, y, 1e-9) == doctest::Approx(oracle::lp_g(x.values(), y.values(), 1.0)));
}

TEST_CASE("analytic and numeric routes agree on every catalog spec") {
    for (const NormSpec& spec : catalog()) {
        CAPTURE(spec.label());
        CHECK(has_analytic_path(spec));
        Rng rng(derive_seed(3, spec.label()));
        for (int i = 0; i < 100; ++i) {
            const Vector x = testsupport::gaussian(rng, spec.dim());
            const Vector y = testsupport::gaussian(rng, spec.dim());
            const auto a = gateaux(spec, x, y, 1e-10);
            const auto n = gateaux(spec, x, y, 1e-10, Route::numeric);
            const double scale = evaluate(spec, y);
            CHECK(std::abs(a.plus - n.plus) <= 1e-6 * scale);
            CHECK(std::abs(a.minus - n.minus) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("inequality chain and subadditivity on random pairs") {
    for (const NormSpec& spec : catalog()) {
        CAPTURE(spec.label());
        Rng rng(derive_seed(4, spec.label()));
        const double tol = default_tol(spec);
        for (int i = 0; i < 300; ++i) {
            const Vector x = testsupport::spread(rng, spec.dim());
            const Vector y = testsupport::spread(rng, spec.dim());
            const Vector z = testsupport::spread(rng, spec.dim());
            const double nx = evaluate(spec, x), ny = evaluate(spec, y);
            const GReport r = g_functional(spec, x, y, tol);
            const double s = 1e-12 * nx * ny;
            CHECK(-nx * ny <= r.g_minus + s);
            CHECK(r.g_minus <= r.g_plus + s);
            CHECK(r.g_plus <= nx * ny + s);
            const auto yz = gateaux(spec, x, y + z, tol);
            const auto gy = gateaux(spec, x, y, tol);
            const auto gz = gateaux(spec, x, z, tol);
            const double t = 1e-12 * (ny + evaluate(spec, z));
            CHECK(yz.plus <= gy.plus + gz.plus + t);
            CHECK(yz.minus >= gy.minus + gz.minus - t);
        }
    }
}

TEST_CASE("g(x, x) = ||x||^2 and homogeneity") {
    for (const NormSpec& spec : catalog()) {
        CAPTURE(spec.label());
        Rng rng(derive_seed(5, spec.label()));
        for (int i = 0; i < 100; ++i) {
            const Vector x = testsupport::spread(rng, spec.dim());
            const double nx = evaluate(spec, x);
            CHECK(std::abs(g_value(spec, x, x, 1e-10) - nx * nx) <= 1e-12 * nx * nx);
        }
    }
}

TEST_CASE("sip_check: l^3 passes, l-inf on R^3 fails S1 with the exact witness") {
    const SipReport ok = sip_check(lp(3, 3), 1000, 1, 1e-8);
    CHECK(ok.all_pass());
    CHECK(ok.trials == 1000);
    const NormSpec sq = linf(3);
    const Vector x{1.0, 1.0, 1.0}, y{1.0, 0.0, 0.0}, z{0.0, 1.0, 0.0};
    CHECK(g_value(sq, x, y, 1e-9) == doctest::Approx(0.5));
    CHECK(g_value(sq, x, z, 1e-9) == doctest::Approx(0.5));
    CHECK(g_value(sq, x, y + z, 1e-9) == doctest::Approx(0.5));
    const SipViolations v = sip_violations(sq, x, y, z, 1.0, 1e-9);
    CHECK(v.s[0] > 0.1);
    const SipReport bad = sip_check(sq, 1000, 1, 1e-8);
    CHECK_FALSE(bad.axioms[0].pass);
    CHECK(bad.axioms[0].x.has_value());
    CHECK(bad.axioms[3].pass);
}

TEST_CASE("S4 holds on every catalog spec") {
    for (const NormSpec& spec : catalog()) {
        CAPTURE(spec.label());
        const SipReport r = sip_check(spec, 300, 2, 1e-8);
        CHECK(r.axioms[3].pass);
        CHECK(r.axioms[2].pass);
    }
}

TEST_CASE("smooth_gradient") {
    const auto g = smooth_gradient(lp(2, 2), Vector{3.0, 4.0});
    REQUIRE(g.has_value());
    CHECK((*g)[0] == doctest::Approx(0.6));
    CHECK((*g)[1] == doctest::Approx(0.8));
    CHECK_FALSE(smooth_gradient(lp(1, 2), Vector{1.0, 0.0}).has_value());
}
