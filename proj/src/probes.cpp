#include "normgeo/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normgeo/angles.hpp"
#include "normgeo/errors.hpp"
#include "normgeo/gfunctional.hpp"
#include "normgeo/linalg.hpp"
#include "normgeo/rng.hpp"
#include "normgeo/search.hpp"

namespace normgeo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

search::Options search_options(const ProbeOptions& opt, std::string_view stream, std::size_t starts = 4) {
    search::Options s;
    s.samples = opt.samples;
    s.refine_iters = opt.refine_iters;
    s.seed = derive_seed(opt.seed, stream);
    s.starts = starts;
    return s;
}

std::vector<Vector> vertex_candidates(const NormSpec& spec) {
    if (!spec.is_polyhedral()) return {};
    try {
        return unit_ball_vertices(spec);
    } catch (const Unsupported&) {
        return {};
    }
}

void require_samples(const ProbeOptions& opt) {
    if (opt.samples == 0) throw InvalidArgument("samples must be at least 1");
    if (!(opt.tol > 0.0)) throw InvalidArgument("tol must be positive");
}

void require_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 2.0)) throw InvalidArgument("epsilon must lie in (0, 2)");
}

void require_unit(const NormSpec& spec, const Vector& x0) {
    if (x0.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), x0.dim());
    if (std::abs(evaluate(spec, x0) - 1.0) > 1e-9) throw InvalidArgument("x0 must lie on the unit sphere");
}

ProbeReport base_report(Property p, const ProbeOptions& opt) {
    ProbeReport r{};
    r.property = p;
    r.verdict = Verdict::no_witness_found;
    r.options = opt;
    return r;
}

double midpoint_norm(const NormSpec& spec, const Vector& x, const Vector& y) { return evaluate(spec, 0.5 * (x + y)); }

// Largest s with ||x0 + s u|| <= 1 and ||x0 - s u|| <= 1. Both constraints are
// convex in s and hold at 0, so the feasible set is an interval [0, s_max].
double symmetric_reach(const NormSpec& spec, const Vector& x0, const Vector& u) {
    auto feasible = [&](double s) { return evaluate(spec, x0 + s * u) <= 1.0 && evaluate(spec, x0 - s * u) <= 1.0; };
    const double nu = evaluate(spec, u);
    double lo = 0.0, hi = 2.0 / nu;  // ||x0 + s u|| >= s||u|| - 1 > 1 beyond this
    if (!feasible(lo)) return 0.0;
    for (int i = 0; i < 80 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

const char* to_string(Property p) noexcept {
    switch (p) {
        case Property::strict_convexity: return "strict-convexity";
        case Property::uc_modulus: return "uc-modulus";
        case Property::nonsquare_sup: return "nonsquare";
        case Property::nonsquare_angle_inf: return "nonsquare-angle";
        case Property::exposed: return "exposed";
        case Property::extreme: return "extreme";
        case Property::dunkl_williams: return "dunkl-williams";
    }
    return "unknown";
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::witness_found: return "witness-found";
        case Verdict::no_witness_found: return "no-witness-found";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

ProbeReport strict_convexity_probe(const NormSpec& spec, const ProbeOptions& opt) {
    require_samples(opt);
    ProbeReport rep = base_report(Property::strict_convexity, opt);
    const auto verts = vertex_candidates(spec);
    const double sep = opt.separation;

    const search::PairObjective midpoint = [&](const Vector& x, const Vector& y) {
        return evaluate(spec, x - y) >= sep ? midpoint_norm(spec, x, y) : kNegInf;
    };
    const auto best = search::maximize_pair(spec, midpoint, search_options(opt, "strict-convexity/midpoint"), verts);
    if (best.value == kNegInf) throw NumericalError("no separated pair found; lower the separation");
    rep.value = midpoint_norm(spec, best.x, best.y);
    rep.extras["midpoint_norm"] = *rep.value;
    rep.extras["midpoint_deficiency"] = 1.0 - *rep.value;
    rep.witness = {best.x, best.y};
    if (*rep.value >= 1.0 - opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "not-strictly-convex";
        return rep;
    }

    if (spec.is_smooth()) {
        const double tol = default_tol(spec);
        const search::PairObjective g_eq = [&](const Vector& x, const Vector& y) {
            return evaluate(spec, x - y) >= sep ? g_value(spec, x, y, tol) : kNegInf;
        };
        const auto eq = search::maximize_pair(spec, g_eq, search_options(opt, "strict-convexity/g-equality"), verts);
        const double gv = g_value(spec, eq.x, eq.y, tol);
        rep.extras["max_g_separated"] = gv;
        if (gv >= 1.0 - opt.tol) {
            rep.verdict = Verdict::witness_found;
            rep.classification = "not-strictly-convex";
            rep.witness = {eq.x, eq.y};
            return rep;
        }
    }
    rep.classification = "no-flat-segment-found";
    return rep;
}

ProbeReport uc_modulus(const NormSpec& spec, double eps, const ProbeOptions& opt) {
    require_epsilon(eps);
    require_samples(opt);
    ProbeReport rep = base_report(Property::uc_modulus, opt);
    rep.epsilon = eps;
    const search::PairObjective midpoint = [&](const Vector& x, const Vector& y) {
        return evaluate(spec, x - y) >= eps ? midpoint_norm(spec, x, y) : kNegInf;
    };
    const auto best = search::maximize_pair(spec, midpoint, search_options(opt, "uc-modulus"), vertex_candidates(spec));
    if (best.value == kNegInf) throw NumericalError("no unit pair with ||x - y|| >= epsilon was sampled");
    rep.value = 1.0 - midpoint_norm(spec, best.x, best.y);
    rep.witness = {best.x, best.y};
    rep.extras["separation"] = evaluate(spec, best.x - best.y);
    if (*rep.value <= opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "modulus-vanishes";
    } else {
        rep.classification = "modulus-upper-bound";
    }
    return rep;
}

ProbeReport nonsquare_sup(const NormSpec& spec, const ProbeOptions& opt) {
    require_samples(opt);
    ProbeReport rep = base_report(Property::nonsquare_sup, opt);
    const auto objective = [&](const Vector& x, const Vector& y) {
        return std::min(evaluate(spec, 0.5 * (x + y)), evaluate(spec, 0.5 * (x - y)));
    };
    const auto best = search::maximize_pair(spec, objective, search_options(opt, "nonsquare"), vertex_candidates(spec));
    rep.value = objective(best.x, best.y);
    rep.witness = {best.x, best.y};
    if (*rep.value >= 1.0 - opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "square";
    } else {
        rep.classification = "no-square-found";
    }
    return rep;
}

ProbeReport nonsq_angle_inf(const NormSpec& spec, double eps, const ProbeOptions& opt) {
    require_epsilon(eps);
    require_samples(opt);
    ProbeReport rep = base_report(Property::nonsquare_angle_inf, opt);
    rep.epsilon = eps;
    const search::PairObjective objective = [&](const Vector& x, const Vector& y) {
        return evaluate(spec, x - y) >= eps ? -cos_angle(spec, x, y).tan_half : kNegInf;
    };
    const auto best = search::maximize_pair(spec, objective, search_options(opt, "nonsquare-angle"), vertex_candidates(spec));
    if (best.value == kNegInf) throw NumericalError("no unit pair with ||x - y|| >= epsilon was sampled");
    rep.value = cos_angle(spec, best.x, best.y).tan_half;
    rep.witness = {best.x, best.y};
    rep.extras["separation"] = evaluate(spec, best.x - best.y);
    if (*rep.value <= opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "angle-inf-vanishes";
    } else {
        rep.classification = "angle-inf-upper-bound";
    }
    return rep;
}

ProbeReport exposed_check(const NormSpec& spec, const Vector& x0, const ProbeOptions& opt) {
    require_unit(spec, x0);
    require_samples(opt);
    ProbeReport rep = base_report(Property::exposed, opt);
    rep.point = x0;
    const double gtol = default_tol(spec);
    const search::PointObjective objective = [&](const Vector& y) { return g_value(spec, x0, y, gtol); };
    const std::vector<Vector> verts = vertex_candidates(spec);
    const auto maxima = search::maximize_point(spec, objective, search_options(opt, "exposed", 16), verts);

    double far = -1.0;
    std::optional<Vector> far_point;
    std::size_t collected = 0;
    for (const auto& m : maxima) {
        if (!m.converged || m.value < 1.0 - opt.tol) continue;
        ++collected;
        const double d = evaluate(spec, m.x - x0);
        if (d > far) {
            far = d;
            far_point = m.x;
        }
    }
    rep.extras["maximizers_collected"] = static_cast<double>(collected);
    rep.extras["best_g"] = maxima.empty() ? kNegInf : maxima.front().value;
    if (collected == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.classification = "inconclusive";
        return rep;
    }
    rep.value = far;
    rep.witness = {x0, *far_point};
    rep.extras["g_at_witness"] = g_value(spec, x0, *far_point, gtol);
    if (far > 10.0 * opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "not-exposed";
    } else if (far <= opt.tol) {
        rep.verdict = Verdict::no_witness_found;
        rep.classification = "exposed";
    } else {
        rep.verdict = Verdict::inconclusive;
        rep.classification = "inconclusive";
    }
    return rep;
}

ProbeReport extreme_check(const NormSpec& spec, const Vector& x0, const ProbeOptions& opt) {
    require_unit(spec, x0);
    require_samples(opt);
    ProbeReport rep = base_report(Property::extreme, opt);
    rep.point = x0;
    const std::size_t n = spec.dim();

    Vector dir = Vector::zeros(n);
    double reach = 0.0;
    if (spec.is_polyhedral()) {
        const auto functionals = polyhedral_functionals(spec);
        std::vector<const Vector*> active;
        for (const Vector& a : functionals) {
            if (dot(a, x0) >= 1.0 - 1e-9) active.push_back(&a);
        }
        linalg::Matrix m(active.size(), n);
        for (std::size_t r = 0; r < active.size(); ++r) {
            for (std::size_t c = 0; c < n; ++c) m(r, c) = (*active[r])[c];
        }
        rep.extras["active_functionals"] = static_cast<double>(active.size());
        if (linalg::rank(m, 1e-9) == n) {
            rep.verdict = Verdict::no_witness_found;
            rep.classification = "extreme";
            rep.extras["exact_vertex_test"] = 1.0;
            return rep;
        }
        const linalg::Matrix ns = linalg::null_space(m, 1e-9);
        std::vector<double> d(n);
        for (std::size_t c = 0; c < n; ++c) d[c] = ns(0, c);
        dir = Vector(d);
        reach = std::numeric_limits<double>::infinity();
        for (const Vector& a : functionals) {
            const double ad = std::abs(dot(a, dir));
            if (ad <= 1e-12) continue;
            reach = std::min(reach, (1.0 - dot(a, x0)) / ad);
        }
        reach = std::max(reach, 0.0);
        rep.extras["exact_vertex_test"] = 1.0;
    } else {
        const search::PointObjective objective = [&](const Vector& u) { return symmetric_reach(spec, x0, u); };
        const auto found = search::maximize_point(spec, objective, search_options(opt, "extreme"));
        dir = found.front().x;
        reach = symmetric_reach(spec, x0, dir);
        rep.extras["exact_vertex_test"] = 0.0;
    }
    const Vector y = x0 + reach * dir;
    const Vector z = x0 - reach * dir;
    rep.value = evaluate(spec, y - z);
    if (*rep.value > opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "not-extreme";
        rep.witness = {y, z};
    } else {
        rep.verdict = Verdict::no_witness_found;
        rep.classification = "extreme";
    }
    return rep;
}

ProbeReport dunkl_williams_check(const NormSpec& spec, const ProbeOptions& opt) {
    require_samples(opt);
    ProbeReport rep = base_report(Property::dunkl_williams, opt);
    Rng rng(derive_seed(opt.seed, "dunkl-williams"));
    const std::size_t n = spec.dim();
    auto draw = [&] {
        std::vector<double> c(n);
        for (double& v : c) v = rng.gaussian();
        return std::exp(rng.uniform(-2.0, 2.0)) * Vector(std::move(c));
    };
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < opt.samples; ++i) {
        const Vector x = draw();
        // Every tenth pair is positively proportional (LHS exactly 0).
        const Vector y = (i % 10 == 9) ? std::exp(rng.uniform(-2.0, 2.0)) * x : draw();
        if (x.is_zero() || y.is_zero()) continue;
        const double nx = evaluate(spec, x), ny = evaluate(spec, y);
        const double lhs = evaluate(spec, x / nx - y / ny);
        const double rhs = 4.0 * evaluate(spec, x - y) / (nx + ny);
        const double slack = rhs - lhs;
        if (slack < worst) {
            worst = slack;
            rep.witness = {x, y};
            rep.extras["lhs"] = lhs;
            rep.extras["rhs"] = rhs;
        }
    }
    rep.value = worst;
    if (worst < -opt.tol) {
        rep.verdict = Verdict::witness_found;
        rep.classification = "violated";
    } else {
        rep.classification = "holds-on-sample";
    }
    return rep;
}

}  // namespace normgeo
