#include "normgeo/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "normgeo/errors.hpp"
#include "normgeo/rng.hpp"

namespace normgeo {

namespace {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ||x||_p with scaling by max|x_i| to avoid overflow and underflow.
double lp_norm(std::span<const double> x, const Exponent& p) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    if (p.is_infinite() || m == 0.0) return m;
    if (p.is_one()) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    const double q = p.value();
    double s = 0.0;
    if (q == 2.0) {
        for (double v : x) s += (v / m) * (v / m);
        return m * std::sqrt(s);
    }
    for (double v : x) s += std::pow(std::abs(v) / m, q);
    return m * std::pow(s, 1.0 / q);
}

double stadium_gauge(double c, double u, double v) {
    const double au = std::abs(u);
    const double av = std::abs(v);
    if (au <= c * av) return av;
    const double one_m_c2 = 1.0 - c * c;
    const double disc = c * c * au * au + one_m_c2 * (au * au + av * av);
    // Stable root: t = (u^2 + v^2) / (c|u| + sqrt(disc)), same as the quadratic formula.
    return (au * au + av * av) / (c * au + std::sqrt(disc));
}

void check_dim(const NormSpec& spec, const Vector& x) {
    if (x.dim() != spec.dim()) throw DimensionMismatch(spec.dim(), x.dim());
}

}  // namespace

Exponent Exponent::finite(double p) {
    if (!std::isfinite(p)) throw InvalidArgument("exponent must be finite or explicitly 'inf'");
    if (!(p >= 1.0)) throw InvalidArgument("exponent p must satisfy p >= 1, got " + format_double(p));
    return Exponent(p, false);
}

Exponent Exponent::conjugate() const {
    if (infinite_) return finite(1.0);
    if (p_ == 1.0) return infinity();
    return finite(p_ / (p_ - 1.0));
}

std::string Exponent::to_string() const { return infinite_ ? "inf" : format_double(p_); }

NormSpec NormSpec::lp(Exponent p, std::size_t dim) {
    if (dim == 0) throw InvalidArgument("dimension must be positive");
    return NormSpec(kinds::Lp{p, dim}, dim);
}

NormSpec NormSpec::weighted_lp(Exponent p, std::vector<double> weights) {
    if (weights.empty()) throw InvalidArgument("weights must be non-empty");
    for (double w : weights) {
        if (!std::isfinite(w) || !(w > 0.0)) throw InvalidArgument("weights must be positive and finite");
    }
    const std::size_t dim = weights.size();
    return NormSpec(kinds::WeightedLp{p, std::move(weights)}, dim);
}

NormSpec NormSpec::quadratic(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidArgument("quadratic form matrix must be non-empty");
    linalg::Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw InvalidArgument("quadratic form matrix must be square");
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(rows[i][j])) throw InvalidArgument("matrix entries must be finite");
            a(i, j) = rows[i][j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double tol = 1e-12 * std::max({1.0, std::abs(a(i, j)), std::abs(a(j, i))});
            if (std::abs(a(i, j) - a(j, i)) > tol) throw InvalidArgument("quadratic form matrix must be symmetric");
        }
    }
    auto l = linalg::cholesky(a);
    if (!l) throw InvalidArgument("quadratic form matrix must be positive definite");
    return NormSpec(kinds::Quadratic{a, *l}, n);
}

NormSpec NormSpec::kt_blend(double lambda) {
    if (!(lambda > 1.0 && lambda < std::sqrt(2.0))) {
        throw InvalidArgument("λ must lie in (1, √2), got " + format_double(lambda));
    }
    return NormSpec(kinds::KTBlend{lambda}, 2);
}

NormSpec NormSpec::polyhedral(const std::vector<Vector>& functionals) {
    if (functionals.empty()) throw InvalidArgument("polyhedral norm needs at least one functional");
    const std::size_t n = functionals.front().dim();
    auto same = [](const Vector& a, const Vector& b) {
        const double scale = std::max(1.0, std::max(euclidean_norm(a), euclidean_norm(b)));
        return max_abs_diff(a, b) <= 1e-12 * scale;
    };
    kinds::Polyhedral poly;
    for (const Vector& a : functionals) {
        if (a.dim() != n) throw DimensionMismatch(n, a.dim());
        if (a.is_zero()) throw InvalidArgument("polyhedral functionals must be nonzero");
        const bool known = std::any_of(poly.functionals.begin(), poly.functionals.end(),
                                       [&](const Vector& b) { return same(a, b); });
        if (known) continue;
        poly.functionals.push_back(a);
        poly.half.push_back(a);
        const Vector neg = -a;
        const bool has_neg = std::any_of(functionals.begin(), functionals.end(),
                                         [&](const Vector& b) { return same(neg, b); });
        if (!has_neg) poly.functionals.push_back(neg);
    }
    // `half` must hold one representative per pair: drop entries whose negation came earlier.
    std::vector<Vector> half;
    for (const Vector& a : poly.half) {
        const Vector neg = -a;
        const bool dup = std::any_of(half.begin(), half.end(), [&](const Vector& b) { return same(neg, b); });
        if (!dup) half.push_back(a);
    }
    poly.half = std::move(half);
    linalg::Matrix m(poly.half.size(), n);
    for (std::size_t i = 0; i < poly.half.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = poly.half[i][j];
    }
    if (linalg::rank(m) < n) throw InvalidArgument("polyhedral functionals must span R^" + std::to_string(n));
    return NormSpec(std::move(poly), n);
}

NormSpec NormSpec::stadium(double c) {
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("stadium half-length c must lie in (0, 1), got " + format_double(c));
    return NormSpec(kinds::Stadium{c}, 2);
}

bool NormSpec::is_smooth() const noexcept {
    return std::visit(overloaded{
                          [](const kinds::Lp& k) { return k.p.is_interior() || k.dim == 1; },
                          [](const kinds::WeightedLp& k) { return k.p.is_interior() || k.weights.size() == 1; },
                          [](const kinds::Quadratic&) { return true; },
                          [](const kinds::KTBlend&) { return false; },
                          [this](const kinds::Polyhedral&) { return dim_ == 1; },
                          [](const kinds::Stadium&) { return true; },
                      },
                      kind_);
}

bool NormSpec::is_strictly_convex() const noexcept {
    return std::visit(overloaded{
                          [](const kinds::Lp& k) { return k.p.is_interior() || k.dim == 1; },
                          [](const kinds::WeightedLp& k) { return k.p.is_interior() || k.weights.size() == 1; },
                          [](const kinds::Quadratic&) { return true; },
                          [](const kinds::KTBlend&) { return false; },
                          [this](const kinds::Polyhedral&) { return dim_ == 1; },
                          [](const kinds::Stadium&) { return false; },
                      },
                      kind_);
}

bool NormSpec::is_polyhedral() const noexcept {
    return std::visit(overloaded{
                          [](const kinds::Lp& k) { return !k.p.is_interior(); },
                          [](const kinds::WeightedLp& k) { return !k.p.is_interior(); },
                          [](const kinds::Quadratic&) { return false; },
                          [](const kinds::KTBlend&) { return false; },
                          [](const kinds::Polyhedral&) { return true; },
                          [](const kinds::Stadium&) { return false; },
                      },
                      kind_);
}

std::string NormSpec::label() const {
    auto row = [](std::span<const double> r) {
        std::string s = "[";
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_double(r[i]);
        return s + "]";
    };
    return std::visit(
        overloaded{
            [](const kinds::Lp& k) { return "lp:" + k.p.to_string() + ":dim=" + std::to_string(k.dim); },
            [](const kinds::WeightedLp& k) {
                std::string s = "wlp:" + k.p.to_string() + ":w=";
                for (std::size_t i = 0; i < k.weights.size(); ++i) s += (i ? "," : "") + format_double(k.weights[i]);
                return s;
            },
            [&](const kinds::Quadratic& k) {
                std::string s = "quad:[";
                for (std::size_t i = 0; i < k.a.rows; ++i) {
                    s += (i ? "," : "") +
                         row(std::span<const double>(k.a.data.data() + i * k.a.cols, k.a.cols));
                }
                return s + "]";
            },
            [](const kinds::KTBlend& k) { return "kt:" + format_double(k.lambda); },
            [&](const kinds::Polyhedral& k) {
                std::string s = "poly:[";
                for (std::size_t i = 0; i < k.functionals.size(); ++i) s += (i ? "," : "") + row(k.functionals[i].coords());
                return s + "]";
            },
            [](const kinds::Stadium& k) { return "stadium:" + format_double(k.c); },
        },
        kind_);
}

double evaluate(const NormSpec& spec, const Vector& x) {
    check_dim(spec, x);
    return std::visit(overloaded{
                          [&](const kinds::Lp& k) { return lp_norm(x.coords(), k.p); },
                          [&](const kinds::WeightedLp& k) {
                              std::vector<double> s(x.dim());
                              for (std::size_t i = 0; i < s.size(); ++i) s[i] = k.weights[i] * x[i];
                              return lp_norm(s, k.p);
                          },
                          [&](const kinds::Quadratic& k) {
                              // ||L^T x||_2 is sqrt(x^T A x) without cancellation.
                              std::vector<double> s(x.dim(), 0.0);
                              for (std::size_t j = 0; j < s.size(); ++j) {
                                  for (std::size_t i = j; i < s.size(); ++i) s[j] += k.chol(i, j) * x[i];
                              }
                              return lp_norm(s, Exponent::finite(2.0));
                          },
                          [&](const kinds::KTBlend& k) {
                              const double e = lp_norm(x.coords(), Exponent::finite(2.0));
                              const double m = k.lambda * std::max(std::abs(x[0]), std::abs(x[1]));
                              return std::max(e, m);
                          },
                          [&](const kinds::Polyhedral& k) {
                              double m = 0.0;
                              for (const Vector& a : k.half) m = std::max(m, std::abs(dot(a, x)));
                              return m;
                          },
                          [&](const kinds::Stadium& k) { return stadium_gauge(k.c, x[0], x[1]); },
                      },
                      spec.kind());
}

Vector normalize(const NormSpec& spec, const Vector& x) {
    const double n = evaluate(spec, x);
    if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    Vector v = x / n;
    // One correction step absorbs the rounding of 1/n.
    const double n2 = evaluate(spec, v);
    if (std::abs(n2 - 1.0) > 1e-15) v = v / n2;
    return v;
}

std::vector<Vector> sample_sphere(const NormSpec& spec, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw InvalidArgument("sample count must be at least 1");
    Rng rng(seed);
    std::vector<Vector> out;
    out.reserve(count);
    std::vector<double> g(spec.dim());
    while (out.size() < count) {
        for (double& v : g) v = rng.gaussian();
        Vector dir(g);
        if (euclidean_norm(dir) < 1e-8) continue;
        out.push_back(normalize(spec, dir));
    }
    return out;
}

EquivBounds equiv_bounds(const NormSpec& spec1, const NormSpec& spec2, std::size_t count, std::uint64_t seed) {
    if (spec1.dim() != spec2.dim()) throw DimensionMismatch(spec1.dim(), spec2.dim());
    EquivBounds b{std::numeric_limits<double>::infinity(), 0.0};
    for (const Vector& v : sample_sphere(spec1, count, seed)) {
        const double r = evaluate(spec2, v) / evaluate(spec1, v);
        b.m_est = std::min(b.m_est, r);
        b.M_est = std::max(b.M_est, r);
    }
    return b;
}

namespace {

std::vector<Vector> sign_vectors(std::size_t n, const std::vector<double>& scale) {
    std::vector<Vector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = ((mask >> (n - 1 - i)) & 1U) ? -scale[i] : scale[i];
        out.emplace_back(std::move(c));
    }
    return out;
}

std::vector<Vector> signed_axes(std::size_t n, const std::vector<double>& scale) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(scale[i] * Vector::unit(n, i));
        out.push_back(-scale[i] * Vector::unit(n, i));
    }
    return out;
}

void enumerate_vertices(const std::vector<Vector>& half, std::size_t n, std::vector<Vector>& out) {
    const std::size_t m = half.size();
    // Guard against combinatorial blow-up; catalog polytopes stay far below this.
    double combos = 1.0;
    for (std::size_t i = 0; i < n; ++i) combos = combos * double(m - i) / double(i + 1);
    if (combos * double(std::size_t{1} << n) > 5e6) {
        throw Unsupported("vertex enumeration too large for this polyhedral norm");
    }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    const auto feasible = [&](const Vector& x) {
        for (const Vector& a : half) {
            if (std::abs(dot(a, x)) > 1.0 + 1e-12) return false;
        }
        return true;
    };
    while (true) {
        linalg::Matrix a(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) a(r, c) = half[idx[r]][c];
        }
        if (linalg::rank(a) == n) {
            // Fixing the first sign to +1 enumerates each +-vertex pair once.
            for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
                std::vector<double> rhs(n, 1.0);
                for (std::size_t r = 1; r < n; ++r) rhs[r] = ((mask >> (r - 1)) & 1U) ? -1.0 : 1.0;
                auto sol = linalg::solve(a, rhs);
                if (!sol) continue;
                Vector x(*sol);
                if (!feasible(x)) continue;
                for (const Vector& cand : {x, -x}) {
                    const bool dup = std::any_of(out.begin(), out.end(), [&](const Vector& v) {
                        return max_abs_diff(v, cand) <= 1e-10 * std::max(1.0, euclidean_norm(v));
                    });
                    if (!dup) out.push_back(cand);
                }
            }
        }
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::vector<Vector> polyhedral_functionals(const NormSpec& spec) {
    const std::size_t n = spec.dim();
    std::vector<double> ones(n, 1.0);
    if (const auto* k = spec.as<kinds::Lp>()) {
        if (k->p.is_one()) return sign_vectors(n, ones);
        if (k->p.is_infinite()) return signed_axes(n, ones);
    } else if (const auto* k = spec.as<kinds::WeightedLp>()) {
        if (k->p.is_one()) return sign_vectors(n, k->weights);
        if (k->p.is_infinite()) return signed_axes(n, k->weights);
    } else if (const auto* k = spec.as<kinds::Polyhedral>()) {
        return k->functionals;
    }
    throw Unsupported("norm " + spec.label() + " is not polyhedral");
}

std::vector<Vector> unit_ball_vertices(const NormSpec& spec) {
    const std::size_t n = spec.dim();
    std::vector<double> inv(n, 1.0);
    if (const auto* k = spec.as<kinds::WeightedLp>()) {
        for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / k->weights[i];
    }
    const kinds::Lp* lp = spec.as<kinds::Lp>();
    const kinds::WeightedLp* wlp = spec.as<kinds::WeightedLp>();
    const Exponent* p = lp ? &lp->p : (wlp ? &wlp->p : nullptr);
    if (p && p->is_one()) return signed_axes(n, inv);
    if (p && p->is_infinite()) return sign_vectors(n, inv);
    if (const auto* k = spec.as<kinds::Polyhedral>()) {
        std::vector<Vector> out;
        enumerate_vertices(k->half, n, out);
        return out;
    }
    throw Unsupported("norm " + spec.label() + " is not polyhedral");
}

}  // namespace normgeo
