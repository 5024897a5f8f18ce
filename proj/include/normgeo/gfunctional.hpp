#pragma once

#include <optional>
#include <string>

#include "normgeo/norms.hpp"

namespace normgeo {

enum class GMethod { analytic, finite_difference };

/// How gateaux()/g_functional() choose their derivative path.
enum class Route {
    automatic,  ///< closed form when the spec has one, finite differences otherwise
    numeric,    ///< always finite differences (the oracle path)
};

const char* to_string(GMethod m) noexcept;

struct Gateaux {
    double plus;   ///< G+(x, y)
    double minus;  ///< G-(x, y)
    GMethod method;
    std::optional<double> step_used;  ///< last |t| of the difference quotient
    std::optional<double> last_delta; ///< last successive-quotient difference (max over both sides)
};

/// One-sided Gateaux derivatives of the norm at x != 0 in direction y.
///
/// Closed forms exist for every catalog kind: gradients for the smooth ones,
/// the l1/l-inf formulas, and for Polyhedral and KTBlend the max (G+) or min
/// (G-) of the active pieces' derivatives.
///
/// The numeric path relies on convexity: phi(t) = (||x + t y|| - ||x||) / t is
/// nondecreasing in t, so t_k = +-2^-k approaches G+ from above and G- from
/// below. Iteration stops once two successive quotients differ by less than
/// `tol`, or at |t| < 1e-12. Quotients are taken on x/||x|| and y/||y|| and
/// rescaled, which keeps t_0 = 1 meaningful at every scale.
Gateaux gateaux(const NormSpec& spec, const Vector& x, const Vector& y, double tol,
                Route route = Route::automatic);

/// g+, g-, g and the underlying G+-. For x = 0 the G fields are unset and every
/// g is 0.
struct GReport {
    std::optional<double> G_plus;
    std::optional<double> G_minus;
    double g_plus;
    double g_minus;
    double g;
    GMethod method;
    std::optional<double> step_used;
};

GReport g_functional(const NormSpec& spec, const Vector& x, const Vector& y, double tol,
                     Route route = Route::automatic);

/// g(x, y) only; equal to g_functional(...).g.
double g_value(const NormSpec& spec, const Vector& x, const Vector& y, double tol,
               Route route = Route::automatic);

/// Whether the automatic route uses a closed form for this spec.
bool has_analytic_path(const NormSpec& spec) noexcept;

/// 1e-9 where finite differences are only a cross-check, 1e-7 otherwise.
double default_tol(const NormSpec& spec) noexcept;

/// Gradient of the norm at x != 0 for smooth specs, nullopt otherwise.
std::optional<Vector> smooth_gradient(const NormSpec& spec, const Vector& x);

// ---------------------------------------------------------------------------
// Semi-inner-product axioms for [y, x] := g(x, y)

struct AxiomResult {
    std::string name;         ///< "S1" .. "S5"
    std::string statement;
    double worst_violation;   ///< scale-free, see sip_check
    bool pass;
    std::optional<Vector> x, y, z;
    std::optional<double> alpha;
};

struct SipReport {
    AxiomResult axioms[5];
    std::size_t trials;
    double tol;
    bool all_pass() const noexcept;
};

/// Violations of S1-S5 at one tuple, in the scale-free units used by sip_check:
///   S1  |g(x, y+z) - g(x,y) - g(x,z)| / (||x|| (||y|| + ||z||))
///   S2  |g(x, a y) - a g(x,y)| / (||x|| ||y|| max(1,|a|))
///   S3  |g(x,x) - ||x||^2| / ||x||^2   (plus any negativity)
///   S4  max(0, |g(x,y)| - ||x|| ||y||) / (||x|| ||y||)
///   S5  |g(a x, y) - a g(x,y)| / (||x|| ||y|| max(1,|a|))
struct SipViolations {
    double s[5];
};
SipViolations sip_violations(const NormSpec& spec, const Vector& x, const Vector& y, const Vector& z,
                             double alpha, double tol);

/// Random-tuple check of the semi-inner-product axioms. For polyhedral specs a
/// quarter of the x draws are unit-ball vertices, where the norm has kinks.
SipReport sip_check(const NormSpec& spec, std::size_t trials, std::uint64_t seed, double tol);

}  // namespace normgeo
