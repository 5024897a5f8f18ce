#include <doctest.h>

#include <cmath>

#include "acceptance/oracles.hpp"
#include "normgeo/duality.hpp"
#include "normgeo/errors.hpp"
#include "normgeo/gfunctional.hpp"
#include "support.hpp"

using namespace normgeo;
using testsupport::linf;
using testsupport::lp;

TEST_CASE("dual norm examples") {
    CHECK(dual_norm(lp(3, 2), {Vector{1.0, 1.0}}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(dual_norm(lp(2, 2), {Vector{3.0, -4.0}}) == doctest::Approx(5.0));
    CHECK(dual_norm(lp(1, 2), {Vector{2.0, -1.0}}) == doctest::Approx(2.0));
    CHECK(dual_norm(linf(3), {Vector{2.0, -1.0, 0.5}}) == doctest::Approx(3.5));
    CHECK(dual_norm(NormSpec::weighted_lp(Exponent::finite(2), {2.0, 1.0}), {Vector{2.0, 1.0}}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(dual_norm(NormSpec::quadratic({{4.0, 0.0}, {0.0, 1.0}}), {Vector{2.0, 0.0}}) == doctest::Approx(1.0));
    CHECK(dual_norm(NormSpec::stadium(0.6), {Vector{1.0, 0.0}}) == doctest::Approx(1.6));
    CHECK(dual_norm(NormSpec::stadium(0.6), {Vector{0.0, 1.0}}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(dual_norm(lp(2, 2), {Vector{1.0, 2.0, 3.0}}), DimensionMismatch);
}

TEST_CASE("dual norm is the sup of f over the sphere") {
    for (const NormSpec& spec : testsupport::catalog()) {
        CAPTURE(spec.label());
        Rng rng(derive_seed(2, spec.label()));
        const Functional f{testsupport::gaussian(rng, spec.dim())};
        const double d = dual_norm(spec, f);
        double best = 0.0;
        for (const Vector& y : sample_sphere(spec, 5000, 3)) {
            CHECK(f(y) <= d * (1.0 + 1e-9));
            best = std::max(best, f(y));
        }
        CHECK(best >= 0.9 * d);
    }
    const DualNormOptions o{2000, 100, 1};
    const Functional f{Vector{1.0, 0.3}};
    CHECK(dual_norm(NormSpec::kt_blend(1.2), f, o) <= dual_norm(lp(2, 2), f) + 1e-12);
    CHECK_FALSE(dual_norm_is_exact(NormSpec::kt_blend(1.2)));
}

TEST_CASE("support functional examples and sandwich") {
    const Vector u{0.6, 0.8};
    CHECK(max_abs_diff(support_functional(lp(2, 2), u).coeffs, u) <= 1e-15);
    const double a = std::pow(2.0, -1.0 / 3.0);
    const Functional s3 = support_functional(lp(3, 2), Vector{a, a});
    CHECK(s3.coeffs[0] == doctest::Approx(std::pow(2.0, -2.0 / 3.0)).epsilon(1e-13));
    CHECK(s3(Vector{a, a}) == doctest::Approx(1.0).epsilon(1e-13));
    const Functional si = support_functional(linf(2), Vector{1.0, 1.0});
    CHECK(si.coeffs == Vector{0.5, 0.5});
    CHECK_THROWS_AS(support_functional(lp(2, 2), Vector{0.0, 0.0}), InvalidArgument);

    for (const NormSpec& spec : testsupport::catalog()) {
        CAPTURE(spec.label());
        Rng rng(derive_seed(6, spec.label()));
        const Vector x0 = testsupport::spread(rng, spec.dim());
        const Functional f = support_functional(spec, x0);
        CHECK(f(x0) == doctest::Approx(evaluate(spec, x0)).epsilon(1e-9));
        CHECK(dual_norm(spec, f) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(support_sandwich_violation(spec, x0, f, 500, 1) <= 1e-9);
    }
}

TEST_CASE("Birkhoff orthogonality") {
    const BirkhoffResult e = birkhoff_check(lp(2, 2), Vector{1.0, 0.0}, Vector{0.0, 1.0}, 1e-9);
    CHECK(e.orthogonal);
    CHECK(e.lambda_star == 0.0);
    REQUIRE(e.g_criterion_agrees.has_value());
    CHECK(*e.g_criterion_agrees);
    const BirkhoffResult l3 = birkhoff_check(lp(3, 2), Vector{1.0, 1.0}, Vector{1.0, -1.0}, 1e-9);
    CHECK(l3.orthogonal);
    CHECK(l3.g_xy == doctest::Approx(0.0));
    const BirkhoffResult l1 = birkhoff_check(lp(1, 2), Vector{1.0, 0.0}, Vector{0.0, 1.0}, 1e-9);
    CHECK(l1.orthogonal);
    CHECK_FALSE(l1.g_criterion_agrees.has_value());
    CHECK(l1.note.rfind("non-smooth", 0) == 0);
    const BirkhoffResult no = birkhoff_check(lp(2, 2), Vector{1.0, 0.0}, Vector{1.0, 1.0}, 1e-9);
    CHECK_FALSE(no.orthogonal);
    CHECK(no.lambda_star == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK_THROWS_AS(birkhoff_check(lp(2, 2), Vector{0.0, 0.0}, Vector{1.0, 0.0}, 1e-9), InvalidArgument);
}

TEST_CASE("Riesz representer examples") {
    const DualRep e = riesz_representer(lp(2, 2), {Vector{3.0, 4.0}});
    CHECK(max_abs_diff(e.representer, Vector{3.0, 4.0}) <= 1e-9);
    const DualRep r3 = riesz_representer(lp(3, 2), {Vector{1.0, 1.0}});
    CHECK(max_abs_diff(r3.representer, Vector{std::cbrt(2.0), std::cbrt(2.0)}) <= 1e-9);
    CHECK(evaluate(lp(3, 2), r3.representer) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-9));
    const DualRep z = riesz_representer(lp(3, 2), {Vector{0.0, 0.0}});
    CHECK(z.representer.is_zero());
    CHECK(z.dual_norm == 0.0);
    CHECK_THROWS_AS(riesz_representer(lp(1, 2), {Vector{1.0, 1.0}}), Unsupported);
    CHECK_THROWS_AS(riesz_representer(NormSpec::kt_blend(1.2), {Vector{1.0, 1.0}}), Unsupported);
    CHECK_THROWS_AS(riesz_representer(NormSpec::stadium(0.6), {Vector{1.0, 1.0}}), Unsupported);
}

TEST_CASE("Riesz representer invariants") {
    const std::vector<NormSpec> specs{lp(1.5, 3), lp(3, 4), lp(4, 2), NormSpec::quadratic({{2.0, 0.5}, {0.5, 1.0}}),
                                      NormSpec::weighted_lp(Exponent::finite(3), {1.0, 2.0})};
    for (const NormSpec& spec : specs) {
        CAPTURE(spec.label());
        Rng rng(derive_seed(8, spec.label()));
        for (int i = 0; i < 5; ++i) {
            const Functional f{testsupport::gaussian(rng, spec.dim())};
            const DualRep r = riesz_representer(spec, f);
            CHECK(std::abs(evaluate(spec, r.representer) - r.dual_norm) <= 1e-8 * r.dual_norm);
            CHECK(r.residual <= 1e-8 * r.dual_norm);
            RieszOptions other;
            other.start_seed = 17 + static_cast<std::uint64_t>(i);
            const DualRep r2 = riesz_representer(spec, f, other);
            CHECK(max_abs_diff(r.representer, r2.representer) <= 1e-8 * r.dual_norm);
            const double alpha = rng.uniform(-3.0, 3.0);
            const DualRep scaled = riesz_representer(spec, {alpha * f.coeffs});
            CHECK(max_abs_diff(scaled.representer, alpha * r.representer) <= 1e-8 * std::max(1.0, std::abs(alpha)) * r.dual_norm);
            if (const auto* l = spec.as<kinds::Lp>()) {
                const auto want = oracle::lp_representer(f.coeffs.values(), l->p.value());
                CHECK(max_abs_diff(r.representer, Vector(want)) <= 1e-8 * r.dual_norm);
            }
        }
    }
}

TEST_CASE("dual g") {
    Rng rng(12);
    const NormSpec e2 = lp(2, 3);
    for (int i = 0; i < 5; ++i) {
        const Functional phi{testsupport::gaussian(rng, 3)}, psi{testsupport::gaussian(rng, 3)};
        CHECK(dual_g(e2, phi, psi) == doctest::Approx(dot(phi.coeffs, psi.coeffs)).epsilon(1e-9));
        const NormSpec l3 = lp(3, 3);
        const double d = dual_norm(l3, phi);
        CHECK(dual_g(l3, phi, phi) == doctest::Approx(d * d).epsilon(1e-9));
        const double want = oracle::lp_g(phi.coeffs.values(), psi.coeffs.values(), 1.5);
        CHECK(std::abs(dual_g(l3, phi, psi) - want) <= 1e-8);
        CHECK(std::abs(dual_g_conjugate_formula(l3, phi, psi) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
    CHECK_THROWS_AS(dual_g_conjugate_formula(NormSpec::kt_blend(1.2), {Vector{1.0, 0.0}}, {Vector{0.0, 1.0}}), Unsupported);
}

TEST_CASE("dual angular-equivalence estimate") {
    const DualAeOptions o{200, 1, 1e6, 1e-10};
    const EquivEstimate same = dual_ae_estimate(lp(2, 2), lp(2, 2), o);
    CHECK(same.C_lower == doctest::Approx(1.0).epsilon(1e-6));
    const EquivEstimate l3 = dual_ae_estimate(lp(3, 2), lp(3, 2), o);
    CHECK(l3.C_lower == doctest::Approx(1.0).epsilon(1e-6));
    const EquivEstimate e24 = dual_ae_estimate(lp(2, 2), lp(4, 2), o);
    CHECK_FALSE(e24.diverged);
    CHECK(std::isfinite(e24.C_lower));
    CHECK(e24.C_lower >= 1.0);
    CHECK_THROWS_AS(dual_ae_estimate(lp(1, 2), lp(2, 2), o), Unsupported);
}
