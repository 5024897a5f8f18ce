#include "normgeo/gfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normgeo/errors.hpp"
#include "normgeo/rng.hpp"

namespace normgeo {

namespace {

constexpr double kMinStep = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Pieces of a max-type norm within this relative band of the max count as active.
constexpr double kTieBand = 1e-12;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

struct PlusMinus {
    double plus;
    double minus;
};

// G+- of ||.||_p at x in direction y.
PlusMinus lp_gateaux(std::span<const double> x, std::span<const double> y, const Exponent& p) {
    const std::size_t n = x.size();
    if (p.is_one()) {
        double lin = 0.0, kink = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] != 0.0) lin += sgn(x[i]) * y[i];
            else kink += std::abs(y[i]);
        }
        return {lin + kink, lin - kink};
    }
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    if (p.is_infinite()) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(x[i]) != m) continue;
            const double d = sgn(x[i]) * y[i];
            hi = std::max(hi, d);
            lo = std::min(lo, d);
        }
        return {hi, lo};
    }
    // d||x||/dx_i = |u_i|^(p-1) sgn(u_i) with u = x / ||x||_p.
    const double q = p.value();
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v) / m, q);
    const double norm = m * std::pow(s, 1.0 / q);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = x[i] / norm;
        d += (q == 2.0 ? u : std::pow(std::abs(u), q - 1.0) * sgn(u)) * y[i];
    }
    return {d, d};
}

Vector stadium_gradient(double c, const Vector& x) {
    const double u = x[0], v = x[1];
    const double au = std::abs(u);
    if (au <= c * std::abs(v)) return Vector{0.0, sgn(v)};
    const double t = evaluate(NormSpec::stadium(c), x);
    const double a = au - c * t;  // > 0 on this branch
    const double den = c * a + t;
    return Vector{a * sgn(u) / den, v / den};
}

std::optional<PlusMinus> analytic_gateaux(const NormSpec& spec, const Vector& x, const Vector& y) {
    if (const auto* k = spec.as<kinds::Lp>()) return lp_gateaux(x.coords(), y.coords(), k->p);
    if (const auto* k = spec.as<kinds::WeightedLp>()) {
        std::vector<double> wx(x.dim()), wy(x.dim());
        for (std::size_t i = 0; i < wx.size(); ++i) {
            wx[i] = k->weights[i] * x[i];
            wy[i] = k->weights[i] * y[i];
        }
        return lp_gateaux(wx, wy, k->p);
    }
    if (spec.as<kinds::Quadratic>() || spec.as<kinds::Stadium>()) {
        const double d = dot(*smooth_gradient(spec, x), y);
        return PlusMinus{d, d};
    }
    // Max-type norms: G+ is the max, G- the min, of the pieces' one-sided
    // derivatives over the pieces active at x.
    if (const auto* k = spec.as<kinds::Polyhedral>()) {
        double top = 0.0;
        for (const Vector& a : k->functionals) top = std::max(top, dot(a, x));
        PlusMinus pm{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        for (const Vector& a : k->functionals) {
            if (dot(a, x) < top * (1.0 - kTieBand)) continue;
            pm.plus = std::max(pm.plus, dot(a, y));
            pm.minus = std::min(pm.minus, dot(a, y));
        }
        return pm;
    }
    if (const auto* k = spec.as<kinds::KTBlend>()) {
        const double e = euclidean_norm(x);
        const double m = k->lambda * std::max(std::abs(x[0]), std::abs(x[1]));
        const double top = std::max(e, m);
        PlusMinus pm{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        if (e >= top * (1.0 - kTieBand)) {
            const double d = dot(x, y) / e;
            pm = {d, d};
        }
        if (m >= top * (1.0 - kTieBand)) {
            const PlusMinus c = lp_gateaux(x.coords(), y.coords(), Exponent::infinity());
            pm.plus = std::max(pm.plus, k->lambda * c.plus);
            pm.minus = std::min(pm.minus, k->lambda * c.minus);
        }
        return pm;
    }
    return std::nullopt;
}

struct OneSide {
    double value;
    double step;
    double delta;
};

// Monotone difference-quotient limit on one side (direction = +1 or -1).
OneSide quotient_limit(const NormSpec& spec, const Vector& xu, double base, const Vector& yu, double direction,
                       double tol) {
    auto phi = [&](double t) {
        const double v = (evaluate(spec, xu + t * yu) - base) / t;
        if (!std::isfinite(v)) throw NumericalError("non-finite difference quotient");
        return v;
    };
    double t = direction;
    double prev = phi(t);
    double delta = std::numeric_limits<double>::infinity();
    while (std::abs(t) * 0.5 >= kMinStep) {
        t *= 0.5;
        const double cur = phi(t);
        delta = std::abs(cur - prev);
        prev = cur;
        // Below the rounding floor of the quotient further halving only adds noise.
        const double noise = 16.0 * kEps / std::abs(t);
        if (delta < std::max(tol, noise)) break;
    }
    return {prev, std::abs(t), delta};
}

}  // namespace

const char* to_string(GMethod m) noexcept {
    return m == GMethod::analytic ? "analytic" : "finite-difference";
}

bool has_analytic_path(const NormSpec& spec) noexcept {
    return spec.as<kinds::Lp>() || spec.as<kinds::WeightedLp>() || spec.as<kinds::Quadratic>() ||
           spec.as<kinds::Stadium>() || spec.as<kinds::Polyhedral>() || spec.as<kinds::KTBlend>();
}

double default_tol(const NormSpec& spec) noexcept { return has_analytic_path(spec) ? 1e-9 : 1e-7; }

std::optional<Vector> smooth_gradient(const NormSpec& spec, const Vector& x) {
    if (x.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), x.dim());
    if (x.is_zero()) throw InvalidArgument("the norm has no gradient at 0");
    if (!spec.is_smooth()) return std::nullopt;
    if (const auto* k = spec.as<kinds::Quadratic>()) {
        std::vector<double> ax(x.dim(), 0.0);
        for (std::size_t i = 0; i < ax.size(); ++i) {
            for (std::size_t j = 0; j < ax.size(); ++j) ax[i] += k->a(i, j) * x[j];
        }
        return Vector(std::move(ax)) / evaluate(spec, x);
    }
    if (const auto* k = spec.as<kinds::Stadium>()) return stadium_gradient(k->c, x);
    // Lp / WeightedLp: the gradient is the vector of partial derivatives.
    std::vector<double> g(x.dim());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = analytic_gateaux(spec, x, Vector::unit(x.dim(), i))->plus;
    return Vector(std::move(g));
}

Gateaux gateaux(const NormSpec& spec, const Vector& x, const Vector& y, double tol, Route route) {
    if (x.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), x.dim());
    if (y.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), y.dim());
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (x.is_zero()) throw InvalidArgument("Gateaux derivative requested at x = 0; use g(0, y) = 0 instead");

    if (route == Route::automatic) {
        if (auto pm = analytic_gateaux(spec, x, y)) {
            if (!std::isfinite(pm->plus) || !std::isfinite(pm->minus)) throw NumericalError("non-finite derivative");
            return {pm->plus, pm->minus, GMethod::analytic, std::nullopt, std::nullopt};
        }
    }
    const double ny = evaluate(spec, y);
    if (ny == 0.0) return {0.0, 0.0, GMethod::finite_difference, std::nullopt, 0.0};
    const Vector xu = x / evaluate(spec, x);
    const Vector yu = y / ny;
    const double base = evaluate(spec, xu);
    const OneSide plus = quotient_limit(spec, xu, base, yu, 1.0, tol);
    const OneSide minus = quotient_limit(spec, xu, base, yu, -1.0, tol);
    return {ny * plus.value, ny * minus.value, GMethod::finite_difference, std::min(plus.step, minus.step),
            std::max(plus.delta, minus.delta)};
}

GReport g_functional(const NormSpec& spec, const Vector& x, const Vector& y, double tol, Route route) {
    if (x.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), x.dim());
    if (y.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), y.dim());
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (x.is_zero()) return {std::nullopt, std::nullopt, 0.0, 0.0, 0.0, GMethod::analytic, std::nullopt};
    const Gateaux d = gateaux(spec, x, y, tol, route);
    const double nx = evaluate(spec, x);
    GReport r{d.plus, d.minus, nx * d.plus, nx * d.minus, 0.0, d.method, d.step_used};
    r.g = 0.5 * (r.g_plus + r.g_minus);
    return r;
}

double g_value(const NormSpec& spec, const Vector& x, const Vector& y, double tol, Route route) {
    return g_functional(spec, x, y, tol, route).g;
}

// ---------------------------------------------------------------------------

bool SipReport::all_pass() const noexcept {
    return std::all_of(std::begin(axioms), std::end(axioms), [](const AxiomResult& a) { return a.pass; });
}

SipViolations sip_violations(const NormSpec& spec, const Vector& x, const Vector& y, const Vector& z, double alpha,
                             double tol) {
    const double nx = evaluate(spec, x), ny = evaluate(spec, y), nz = evaluate(spec, z);
    const double gxy = g_value(spec, x, y, tol);
    const double tiny = std::numeric_limits<double>::min();
    SipViolations v{};
    const double gxz = g_value(spec, x, z, tol);
    const double gsum = g_value(spec, x, y + z, tol);
    v.s[0] = std::abs(gsum - gxy - gxz) / std::max(nx * (ny + nz), tiny);
    const double hscale = std::max(nx * ny * std::max(1.0, std::abs(alpha)), tiny);
    v.s[1] = std::abs(g_value(spec, x, alpha * y, tol) - alpha * gxy) / hscale;
    const double gxx = g_value(spec, x, x, tol);
    v.s[2] = x.is_zero() ? 0.0 : std::abs(gxx - nx * nx) / (nx * nx) + std::max(0.0, -gxx);
    v.s[3] = std::max(0.0, std::abs(gxy) - nx * ny) / std::max(nx * ny, tiny);
    v.s[4] = std::abs(g_value(spec, alpha * x, y, tol) - alpha * gxy) / hscale;
    return v;
}

SipReport sip_check(const NormSpec& spec, std::size_t trials, std::uint64_t seed, double tol) {
    if (trials == 0) throw InvalidArgument("trials must be at least 1");
    static const char* const names[5] = {"S1", "S2", "S3", "S4", "S5"};
    static const char* const statements[5] = {
        "g(x, y+z) = g(x, y) + g(x, z)",
        "g(x, a y) = a g(x, y)",
        "g(x, x) = ||x||^2 >= 0",
        "|g(x, y)| <= ||x|| ||y||",
        "g(a x, y) = a g(x, y)",
    };
    SipReport rep{};
    rep.trials = trials;
    rep.tol = tol;
    for (int i = 0; i < 5; ++i) {
        rep.axioms[i].name = names[i];
        rep.axioms[i].statement = statements[i];
        rep.axioms[i].worst_violation = 0.0;
    }
    std::vector<Vector> vertices;
    if (spec.is_polyhedral()) vertices = unit_ball_vertices(spec);

    Rng rng(seed);
    const std::size_t n = spec.dim();
    auto gaussian = [&] {
        std::vector<double> c(n);
        for (double& v : c) v = rng.gaussian();
        return Vector(std::move(c));
    };
    for (std::size_t t = 0; t < trials; ++t) {
        Vector x = gaussian();
        const double pick = rng.uniform(0.0, 1.0);
        if (!vertices.empty() && pick < 0.25) {
            const auto idx = static_cast<std::size_t>(rng.next() % vertices.size());
            x = rng.uniform(0.5, 2.0) * vertices[idx];
        }
        const Vector y = gaussian();
        const Vector z = gaussian();
        const double alpha = rng.uniform(-3.0, 3.0);
        if (x.is_zero()) continue;
        const SipViolations v = sip_violations(spec, x, y, z, alpha, tol);
        for (int i = 0; i < 5; ++i) {
            AxiomResult& a = rep.axioms[i];
            if (v.s[i] > a.worst_violation || !a.x) {
                a.worst_violation = v.s[i];
                a.x = x;
                a.y = y;
                a.z = z;
                a.alpha = alpha;
            }
        }
    }
    for (auto& a : rep.axioms) a.pass = a.worst_violation <= tol;
    return rep;
}

}  // namespace normgeo
