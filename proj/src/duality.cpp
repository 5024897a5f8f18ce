#include "normgeo/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "normgeo/errors.hpp"
#include "normgeo/gfunctional.hpp"
#include "normgeo/linalg.hpp"
#include "normgeo/rng.hpp"
#include "normgeo/search.hpp"

namespace normgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const NormSpec& spec, const Vector& v) {
    if (v.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), v.dim());
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

Vector divide_by_weights(const Vector& f, const std::vector<double>& w) {
    std::vector<double> c(f.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f[i] / w[i];
    return Vector(std::move(c));
}

// Subgradient of ||.||_p (p in {1, inf}) at unit u, scaled by weights w.
Vector polyhedral_lp_subgradient(const Exponent& p, const Vector& u, const std::vector<double>& w) {
    const std::size_t n = u.dim();
    std::vector<double> f(n, 0.0);
    if (p.is_one()) {
        for (std::size_t i = 0; i < n; ++i) f[i] = w[i] * sgn(u[i]);
        return Vector(std::move(f));
    }
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(w[i] * u[i]));
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += std::abs(w[i] * u[i]) == m ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(w[i] * u[i]) == m) f[i] = w[i] * sgn(u[i]) / static_cast<double>(count);
    }
    return Vector(std::move(f));
}

// Average of the gradients of the active pieces of a max-type norm at unit u.
Vector averaged_active(const std::vector<Vector>& gradients) {
    Vector acc = Vector::zeros(gradients.front().dim());
    for (const Vector& g : gradients) acc = acc + g;
    return acc / static_cast<double>(gradients.size());
}

}  // namespace

// ---------------------------------------------------------------------------

bool dual_norm_is_exact(const NormSpec& spec) noexcept { return !spec.as<kinds::KTBlend>(); }

double dual_norm(const NormSpec& spec, const Functional& f, const DualNormOptions& opt) {
    check_dim(spec, f.coeffs);
    const std::size_t n = spec.dim();
    if (const auto* k = spec.as<kinds::Lp>()) return evaluate(NormSpec::lp(k->p.conjugate(), n), f.coeffs);
    if (const auto* k = spec.as<kinds::WeightedLp>()) {
        return evaluate(NormSpec::lp(k->p.conjugate(), n), divide_by_weights(f.coeffs, k->weights));
    }
    if (const auto* k = spec.as<kinds::Quadratic>()) {
        const auto sol = linalg::cholesky_solve(k->chol, f.coeffs.values());
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += f.coeffs[i] * sol[i];
        return std::sqrt(std::max(0.0, s));
    }
    if (const auto* k = spec.as<kinds::Stadium>()) return k->c * std::abs(f.coeffs[0]) + euclidean_norm(f.coeffs);
    if (spec.as<kinds::Polyhedral>()) {
        double m = 0.0;
        for (const Vector& v : unit_ball_vertices(spec)) m = std::max(m, f(v));
        return m;
    }
    if (f.coeffs.is_zero()) return 0.0;
    search::Options s;
    s.samples = opt.samples;
    s.refine_iters = opt.refine_iters;
    s.seed = derive_seed(opt.seed, "dual-norm");
    const auto best = search::maximize_point(spec, [&](const Vector& y) { return f(y); }, s);
    return best.front().value;
}

Functional support_functional(const NormSpec& spec, const Vector& x0) {
    check_dim(spec, x0);
    if (x0.is_zero()) throw InvalidArgument("support functional requested at x0 = 0");
    const Vector u = normalize(spec, x0);
    if (auto grad = smooth_gradient(spec, u)) return {*grad};
    const std::size_t n = spec.dim();
    if (const auto* k = spec.as<kinds::Lp>()) return {polyhedral_lp_subgradient(k->p, u, std::vector<double>(n, 1.0))};
    if (const auto* k = spec.as<kinds::WeightedLp>()) return {polyhedral_lp_subgradient(k->p, u, k->weights)};
    if (const auto* k = spec.as<kinds::Polyhedral>()) {
        double best = 0.0;
        for (const Vector& a : k->functionals) best = std::max(best, dot(a, u));
        std::vector<Vector> active;
        for (const Vector& a : k->functionals) {
            if (dot(a, u) >= best - 1e-12) active.push_back(a);
        }
        return {averaged_active(active)};
    }
    if (const auto* k = spec.as<kinds::KTBlend>()) {
        const double eu = euclidean_norm(u);
        const double m = std::max(std::abs(u[0]), std::abs(u[1]));
        const double top = std::max(eu, k->lambda * m);
        std::vector<Vector> active;
        if (eu >= top - 1e-12) active.push_back(u / eu);
        if (k->lambda * m >= top - 1e-12) {
            std::vector<Vector> corner;
            for (std::size_t i = 0; i < 2; ++i) {
                if (std::abs(u[i]) == m) corner.push_back(k->lambda * sgn(u[i]) * Vector::unit(2, i));
            }
            active.push_back(averaged_active(corner));
        }
        return {averaged_active(active)};
    }
    throw Unsupported("no support functional selection for " + spec.label());
}

double support_sandwich_violation(const NormSpec& spec, const Vector& x0, const Functional& f, std::size_t samples,
                                  std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = spec.dim();
    const double tol = default_tol(spec);
    double worst = -kInf;
    for (std::size_t i = 0; i < samples; ++i) {
        std::vector<double> c(n);
        for (double& v : c) v = rng.gaussian();
        const Vector y(std::move(c));
        const double ny = evaluate(spec, y);
        if (ny == 0.0) continue;
        const Gateaux d = gateaux(spec, x0, y, tol);
        const double fy = f(y);
        worst = std::max(worst, std::max(d.minus - fy, fy - d.plus) / ny);
    }
    return worst;
}

// ---------------------------------------------------------------------------

BirkhoffResult birkhoff_check(const NormSpec& spec, const Vector& x, const Vector& y, double tol) {
    check_dim(spec, x);
    check_dim(spec, y);
    if (x.is_zero()) throw InvalidArgument("Birkhoff orthogonality needs x != 0");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    BirkhoffResult r{};
    r.norm_x = evaluate(spec, x);
    r.g_xy = g_value(spec, x, y, default_tol(spec));
    const double ny = evaluate(spec, y);
    if (ny == 0.0) {
        r.orthogonal = true;
        r.lambda_star = 0.0;
        r.min_norm = r.norm_x;
    } else {
        // lambda -> ||x + lambda y|| is convex and exceeds ||x|| once |lambda| > 2||x||/||y||.
        const auto h = [&](double lam) { return evaluate(spec, x + lam * y); };
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = -2.0 * r.norm_x / ny, b = 2.0 * r.norm_x / ny;
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double hc = h(c), hd = h(d);
        const double width = tol * std::max(1.0, b);
        for (int it = 0; it < 400 && b - a > width; ++it) {
            if (hc <= hd) {
                b = d;
                d = c;
                hd = hc;
                c = b - invphi * (b - a);
                hc = h(c);
            } else {
                a = c;
                c = d;
                hc = hd;
                d = a + invphi * (b - a);
                hd = h(d);
            }
        }
        r.lambda_star = 0.5 * (a + b);
        r.min_norm = h(r.lambda_star);
        if (r.norm_x <= r.min_norm) {
            r.lambda_star = 0.0;
            r.min_norm = r.norm_x;
        }
        r.orthogonal = r.min_norm >= r.norm_x - tol;
    }
    if (spec.is_smooth()) {
        const bool g_zero = std::abs(r.g_xy) <= tol * r.norm_x * ny;
        r.g_criterion_agrees = g_zero == r.orthogonal;
        r.note = "smooth: B-orthogonality cross-checked against g(x, y) = 0";
    } else {
        r.note = "non-smooth: g(x, y) = 0 characterization not invoked";
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Projection {
    Vector x0;
    std::size_t iterations;
};

// argmin over z in ker f of ||y - z||, returned as x0 = y - z0. The hyperplane
// is parameterized by an orthonormal basis B (rows), z = B^T c, and the smooth
// strictly convex objective is minimized by gradient descent with
// Barzilai-Borwein steps and Armijo backtracking.
Projection chebyshev_residual(const NormSpec& spec, const Vector& f, const Vector& y, std::vector<double> c,
                              const RieszOptions& opt) {
    const std::size_t n = spec.dim();
    const linalg::Matrix basis = linalg::orthogonal_complement(f.values());
    const std::size_t m = basis.rows;
    if (m == 0) return {y, 0};
    c.resize(m, 0.0);

    auto point = [&](const std::vector<double>& cc) {
        std::vector<double> v = y.values();
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t i = 0; i < n; ++i) v[i] -= cc[r] * basis(r, i);
        }
        return Vector(std::move(v));
    };
    auto gradient = [&](const Vector& v) {
        const Vector g = *smooth_gradient(spec, v);
        std::vector<double> out(m, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t i = 0; i < n; ++i) out[r] -= basis(r, i) * g[i];
        }
        return out;
    };
    auto norm2 = [](const std::vector<double>& a) {
        double s = 0.0;
        for (double v : a) s += v * v;
        return std::sqrt(s);
    };

    // Norm values stop resolving the minimizer near sqrt(eps); the gradient
    // does not, so finish with Newton steps on the stationarity condition
    // (finite-difference Jacobian, backtracking on the gradient norm).
    auto polish = [&](std::vector<double>& cc) {
        std::vector<double> gr = gradient(point(cc));
        double gn = norm2(gr);
        for (int it = 0; it < 50 && gn > 0.0; ++it) {
            linalg::Matrix jac(m, m);
            for (std::size_t j = 0; j < m; ++j) {
                const double h = 1e-7 * std::max(1.0, std::abs(cc[j]));
                std::vector<double> cp = cc, cm = cc;
                cp[j] += h;
                cm[j] -= h;
                const auto gp = gradient(point(cp)), gm = gradient(point(cm));
                for (std::size_t r = 0; r < m; ++r) jac(r, j) = (gp[r] - gm[r]) / (2.0 * h);
            }
            const auto dir = linalg::solve(jac, gr);
            if (!dir) return;
            bool improved = false;
            for (double a = 1.0; a > 1e-6; a *= 0.5) {
                std::vector<double> trial(m);
                for (std::size_t r = 0; r < m; ++r) trial[r] = cc[r] - a * (*dir)[r];
                const auto gt = gradient(point(trial));
                const double tn = norm2(gt);
                if (tn < gn) {
                    cc = trial;
                    gr = gt;
                    gn = tn;
                    improved = true;
                    break;
                }
            }
            if (!improved) return;
        }
    };

    Vector v = point(c);
    double val = evaluate(spec, v);
    std::vector<double> g = gradient(v);
    double alpha = 1.0;
    std::vector<double> prev_c, prev_g;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        const double gn = norm2(g);
        if (gn == 0.0) return {v, it};
        if (!prev_c.empty()) {
            double sy = 0.0, ss = 0.0;
            for (std::size_t r = 0; r < m; ++r) {
                const double s = c[r] - prev_c[r], d = g[r] - prev_g[r];
                sy += s * d;
                ss += s * s;
            }
            alpha = sy > 0.0 ? ss / sy : alpha * 2.0;
        }
        alpha = std::min(alpha, 1e6 * std::max(1.0, val) / gn);
        std::vector<double> trial(m);
        double trial_val = 0.0;
        Vector trial_v = v;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            for (std::size_t r = 0; r < m; ++r) trial[r] = c[r] - alpha * g[r];
            trial_v = point(trial);
            trial_val = evaluate(spec, trial_v);
            if (trial_val <= val - 1e-4 * alpha * gn * gn) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // No further decrease is representable: stationary up to rounding.
            if (gn <= 1e-6) {
                polish(c);
                return {point(c), it};
            }
            throw NumericalError("Chebyshev projection stalled before reaching tolerance");
        }
        const double step = alpha * gn;
        const double improvement = val - trial_val;
        prev_c = c;
        prev_g = g;
        c = trial;
        v = trial_v;
        val = trial_val;
        g = gradient(v);
        if (step < opt.tol && improvement < opt.tol) {
            polish(c);
            return {point(c), it};
        }
    }
    throw NumericalError("Chebyshev projection did not reach tolerance within the iteration budget");
}

}  // namespace

DualRep riesz_representer(const NormSpec& spec, const Functional& f, const RieszOptions& opt) {
    check_dim(spec, f.coeffs);
    if (!spec.is_smooth() || !spec.is_strictly_convex()) {
        throw Unsupported("representer needs a smooth, strictly convex norm; " + spec.label() + " is not");
    }
    const std::size_t n = spec.dim();
    if (f.coeffs.is_zero()) return {f, 0.0, Vector::zeros(n), 0.0, 0};

    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(f.coeffs[i]) > std::abs(f.coeffs[k])) k = i;
    }
    Vector y = Vector::unit(n, k);
    std::vector<double> start;
    if (opt.start_seed != 0) {
        Rng rng(derive_seed(opt.start_seed, "riesz-start"));
        do {
            std::vector<double> c(n);
            for (double& v : c) v = rng.gaussian();
            y = Vector(std::move(c));
        } while (std::abs(f(y)) < 1e-3 * euclidean_norm(f.coeffs) * euclidean_norm(y));
        start.resize(n > 0 ? n - 1 : 0);
        for (double& v : start) v = rng.gaussian();
    }
    const Projection proj = chebyshev_residual(spec, f.coeffs, y, start, opt);
    const double nx0 = evaluate(spec, proj.x0);
    const Vector x = (f(proj.x0) / (nx0 * nx0)) * proj.x0;

    DualRep rep{f, dual_norm(spec, f), x, 0.0, proj.iterations};
    if (opt.validation_samples > 0) {
        const double gtol = default_tol(spec);
        for (const Vector& yv : sample_sphere(spec, opt.validation_samples, derive_seed(0, "riesz-validation"))) {
            rep.residual = std::max(rep.residual, std::abs(f(yv) - g_value(spec, x, yv, gtol)));
        }
    }
    return rep;
}

double dual_g(const NormSpec& spec, const Functional& phi, const Functional& psi, double tol) {
    RieszOptions opt;
    opt.tol = tol;
    opt.validation_samples = 0;
    const DualRep rphi = riesz_representer(spec, phi, opt);
    const DualRep rpsi = riesz_representer(spec, psi, opt);
    return g_value(spec, rpsi.representer, rphi.representer, default_tol(spec));
}

double dual_g_conjugate_formula(const NormSpec& spec, const Functional& phi, const Functional& psi) {
    check_dim(spec, phi.coeffs);
    check_dim(spec, psi.coeffs);
    const std::size_t n = spec.dim();
    if (const auto* k = spec.as<kinds::Lp>()) {
        return g_value(NormSpec::lp(k->p.conjugate(), n), phi.coeffs, psi.coeffs, 1e-9);
    }
    if (const auto* k = spec.as<kinds::WeightedLp>()) {
        return g_value(NormSpec::lp(k->p.conjugate(), n), divide_by_weights(phi.coeffs, k->weights),
                       divide_by_weights(psi.coeffs, k->weights), 1e-9);
    }
    if (const auto* k = spec.as<kinds::Quadratic>()) {
        const auto sol = linalg::cholesky_solve(k->chol, psi.coeffs.values());
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += phi.coeffs[i] * sol[i];
        return s;
    }
    throw Unsupported("no closed-form dual g-functional for " + spec.label());
}

EquivEstimate dual_ae_estimate(const NormSpec& spec1, const NormSpec& spec2, const DualAeOptions& opt) {
    if (spec1.dim() != spec2.dim()) throw DimensionMismatch(spec1.dim(), spec2.dim());
    if (opt.samples == 0) throw InvalidArgument("samples must be at least 1");
    if (!(opt.cap > 1.0)) throw InvalidArgument("cap must exceed 1");
    for (const NormSpec* s : {&spec1, &spec2}) {
        if (!s->is_smooth() || !s->is_strictly_convex()) {
            throw Unsupported("dual angular equivalence needs smooth, strictly convex norms; " + s->label() + " is not");
        }
    }
    RieszOptions ropt;
    ropt.tol = opt.tol;
    ropt.validation_samples = 0;
    const std::size_t n = spec1.dim();

    // Q = (1 - g*(phi,psi)) / (1 + g*(phi,psi)) on the dual unit sphere.
    auto q = [&](const NormSpec& spec, const Vector& phi, const Vector& psi) {
        const Functional fp{phi / dual_norm(spec, Functional{phi})};
        const Functional fs{psi / dual_norm(spec, Functional{psi})};
        const Vector xphi = riesz_representer(spec, fp, ropt).representer;
        const Vector xpsi = riesz_representer(spec, fs, ropt).representer;
        const double c = std::clamp(g_value(spec, xpsi, xphi, default_tol(spec)), -1.0, 1.0);
        return c <= -1.0 ? kInf : (1.0 - c) / (1.0 + c);
    };

    Rng rng(derive_seed(opt.seed, "dual-ae"));
    auto draw = [&] {
        std::vector<double> c(n);
        do {
            for (double& v : c) v = rng.gaussian();
        } while (std::all_of(c.begin(), c.end(), [](double v) { return std::abs(v) < 1e-8; }));
        return Vector(c);
    };
    EquivEstimate est{-1.0, Vector::zeros(n), Vector::zeros(n), false, opt.samples, 0, opt.cap};
    for (std::size_t i = 0; i < opt.samples; ++i) {
        const Vector phi = draw();
        const Vector psi = draw();
        const double r = extended_ratio(q(spec2, phi, psi), q(spec1, phi, psi));
        if (r > est.C_lower) {
            est.C_lower = r;
            est.witness_x = phi;
            est.witness_y = psi;
        }
    }
    est.diverged = est.C_lower > opt.cap;
    return est;
}

}  // namespace normgeo
