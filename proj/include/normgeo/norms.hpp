#pragma once

// Norm catalog on R^n.
//
// Closed forms used by evaluate():
//
//   Lp          (sum |x_i|^p)^(1/p), max |x_i| for p = inf
//   WeightedLp  || (w_1 x_1, ..., w_n x_n) ||_p
//   Quadratic   sqrt(x^T A x), A symmetric positive definite
//   KTBlend     max{ sqrt(x^2 + y^2), lambda * max{|x|, |y|} },  1 < lambda < sqrt(2)
//   Polyhedral  max_i |<a_i, x>|
//   Stadium     gauge of K = conv(D((-c,0),1) u D((c,0),1)) = segment [-c,c]x{0} + unit disk.
//
// Stadium gauge of p = (u, v): the smallest t with dist(p/t, segment) <= 1.
//   |u| <= c|v|  (nearest segment point interior)  ->  t = |v|
//   otherwise    (nearest point is the end (c,0))  ->  t is the positive root of
//                (1 - c^2) t^2 + 2c|u| t - (u^2 + v^2) = 0,
//                t = (sqrt(c^2 u^2 + (1 - c^2)(u^2 + v^2)) - c|u|) / (1 - c^2).
// The two branches meet with matching gradients at |u| = c|v|, so the gauge is
// C^1 away from 0; the junction points (+-c, +-1) are extreme but not exposed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "normgeo/linalg.hpp"
#include "normgeo/vector.hpp"

namespace normgeo {

/// Exponent p in [1, inf]. Infinity is a distinct state, never a large float.
class Exponent {
public:
    static Exponent finite(double p);
    static Exponent infinity() noexcept { return Exponent(0.0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_one() const noexcept { return !infinite_ && p_ == 1.0; }
    /// 1 < p < inf: the smooth, strictly convex regime.
    bool is_interior() const noexcept { return !infinite_ && p_ > 1.0; }
    /// Finite value; only meaningful when !is_infinite().
    double value() const noexcept { return p_; }

    /// Conjugate exponent p' with 1/p + 1/p' = 1.
    Exponent conjugate() const;
    std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent(double p, bool inf) : p_(p), infinite_(inf) {}
    double p_;
    bool infinite_;
};

namespace kinds {

struct Lp {
    Exponent p;
    std::size_t dim;
};

struct WeightedLp {
    Exponent p;
    std::vector<double> weights;
};

struct Quadratic {
    linalg::Matrix a;
    linalg::Matrix chol;  // lower Cholesky factor of a
};

struct KTBlend {
    double lambda;
};

struct Polyhedral {
    std::vector<Vector> functionals;  // closed under negation
    std::vector<Vector> half;         // one representative of each +-pair
};

struct Stadium {
    double c;
};

}  // namespace kinds

/// Immutable, validated description of a norm from the catalog.
class NormSpec {
public:
    using Variant = std::variant<kinds::Lp, kinds::WeightedLp, kinds::Quadratic, kinds::KTBlend,
                                 kinds::Polyhedral, kinds::Stadium>;

    static NormSpec lp(Exponent p, std::size_t dim);
    static NormSpec weighted_lp(Exponent p, std::vector<double> weights);
    static NormSpec quadratic(const std::vector<std::vector<double>>& a);
    static NormSpec kt_blend(double lambda);
    /// Adds -a_i for every a_i lacking its negation; rejects sets not spanning R^n.
    static NormSpec polyhedral(const std::vector<Vector>& functionals);
    static NormSpec stadium(double c);

    std::size_t dim() const noexcept { return dim_; }
    const Variant& kind() const noexcept { return kind_; }
    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(&kind_);
    }

    /// Gateaux differentiable away from 0.
    bool is_smooth() const noexcept;
    bool is_strictly_convex() const noexcept;
    /// Unit ball is a polytope (l1, l-inf, their weighted forms, Polyhedral).
    bool is_polyhedral() const noexcept;

    /// Canonical text in the CLI norm grammar; parses back to an equal spec.
    std::string label() const;

private:
    NormSpec(Variant kind, std::size_t dim) : kind_(std::move(kind)), dim_(dim) {}
    Variant kind_;
    std::size_t dim_;
};

/// ||x|| under `spec`.
double evaluate(const NormSpec& spec, const Vector& x);

/// x / ||x||; x must be nonzero.
Vector normalize(const NormSpec& spec, const Vector& x);

/// `count` points of the unit sphere: Gaussian directions normalized by the
/// spec norm. A pure function of (spec, count, seed); the first k outputs do
/// not depend on count.
std::vector<Vector> sample_sphere(const NormSpec& spec, std::size_t count, std::uint64_t seed);

struct EquivBounds {
    double m_est;
    double M_est;
};

/// Sampled estimate of m, M in m ||x||_1 <= ||x||_2 <= M ||x||_1.
EquivBounds equiv_bounds(const NormSpec& spec1, const NormSpec& spec2, std::size_t count,
                         std::uint64_t seed);

/// The symmetric functional set {a_i} with ||x|| = max_i <a_i, x> for polyhedral specs.
std::vector<Vector> polyhedral_functionals(const NormSpec& spec);

/// Vertices of the unit ball of a polyhedral spec.
std::vector<Vector> unit_ball_vertices(const NormSpec& spec);

}  // namespace normgeo
