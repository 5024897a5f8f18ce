#pragma once

// Duality on R^n. A functional is its coefficient vector under the standard
// pairing f(y) = sum_i f_i y_i. Finite dimension makes every space reflexive,
// which is the only role reflexivity plays here.

#include <cstdint>
#include <optional>
#include <string>

#include "normgeo/angles.hpp"
#include "normgeo/norms.hpp"

namespace normgeo {

struct Functional {
    Vector coeffs;

    double operator()(const Vector& y) const { return dot(coeffs, y); }
    std::size_t dim() const noexcept { return coeffs.dim(); }
};

struct DualNormOptions {
    std::size_t samples = 10000;
    std::size_t refine_iters = 200;
    std::uint64_t seed = 0;
};

/// ||f||* = sup_{||y|| = 1} f(y). Closed form for Lp/WeightedLp (conjugate
/// exponent), Quadratic (sqrt(f^T A^-1 f)), Stadium (c|f_1| + |f|_2) and
/// Polyhedral (max over unit-ball vertices); otherwise a sampled and refined
/// lower bound.
double dual_norm(const NormSpec& spec, const Functional& f, const DualNormOptions& opt = {});

/// True when dual_norm() is exact for this spec rather than a search bound.
bool dual_norm_is_exact(const NormSpec& spec) noexcept;

/// A functional with f(x0) = ||x0|| and ||f||* = 1. Smooth specs return the
/// gradient at x0; otherwise a fixed subgradient: the sign pattern for l1 and
/// the uniform average over the active pieces for l-inf, KTBlend and Polyhedral.
Functional support_functional(const NormSpec& spec, const Vector& x0);

/// Worst violation of G-(x0, y) <= f(y) <= G+(x0, y) over `samples` random y
/// (<= 0 when the sandwich holds).
double support_sandwich_violation(const NormSpec& spec, const Vector& x0, const Functional& f, std::size_t samples,
                                  std::uint64_t seed);

struct BirkhoffResult {
    bool orthogonal;           ///< min_lambda ||x + lambda y|| >= ||x|| - tol
    double lambda_star;        ///< minimizer found by golden-section search
    double min_norm;           ///< ||x + lambda_star y||
    double norm_x;
    double g_xy;
    /// Smooth specs: whether |g(x,y)| <= tol ||x|| ||y|| agrees with `orthogonal`.
    std::optional<bool> g_criterion_agrees;
    std::string note;
};

BirkhoffResult birkhoff_check(const NormSpec& spec, const Vector& x, const Vector& y, double tol);

/// The x with f(y) = g(x, y) for all y and ||x|| = ||f||*.
struct DualRep {
    Functional f;
    double dual_norm;
    Vector representer;
    double residual;      ///< max |f(y') - g(x, y')| over validation unit vectors y'
    std::size_t iterations;
};

struct RieszOptions {
    double tol = 1e-10;
    /// 0: start the hyperplane minimization at z = 0 from y = e_k, k = argmax |f_k|.
    /// Otherwise a different admissible y and a random start drawn from this seed.
    std::uint64_t start_seed = 0;
    std::size_t validation_samples = 100;
    std::size_t max_iterations = 200000;
};

/// Constructs the representer by projecting y onto ker f (the Chebyshev
/// projection z0) and rescaling x0 = y - z0 to (f(x0) / ||x0||^2) x0.
/// Requires a smooth, strictly convex spec.
DualRep riesz_representer(const NormSpec& spec, const Functional& f, const RieszOptions& opt = {});

/// g on the dual space: g*(phi, psi) = g(x_psi, x_phi).
double dual_g(const NormSpec& spec, const Functional& phi, const Functional& psi, double tol = 1e-10);

/// Direct conjugate-exponent formula for Lp: the l^{p'} g-functional of the
/// coefficient vectors. Used to cross-validate dual_g.
double dual_g_conjugate_formula(const NormSpec& spec, const Functional& phi, const Functional& psi);

struct DualAeOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double cap = 1e6;
    double tol = 1e-10;
};

/// Angular-equivalence estimate of the two dual norms. Random functional pairs
/// are normalized on each dual sphere, mapped to representers, and compared by
/// Q_i = (1 - g*_i(phi, psi)) / (1 + g*_i(phi, psi)); C_lower = max Q_2 / Q_1
/// (the squared tan-half ratio, as it appears in the transfer inequality).
EquivEstimate dual_ae_estimate(const NormSpec& spec1, const NormSpec& spec2, const DualAeOptions& opt = {});

}  // namespace normgeo
