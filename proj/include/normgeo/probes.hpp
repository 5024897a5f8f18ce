#pragma once

// Detectors for geometric properties of a norm's unit ball.
//
// Every probe is one-sided. `witness_found` comes with points that reproduce
// the reported value when re-evaluated; `no_witness_found` only means the
// search came up empty.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normgeo/norms.hpp"

namespace normgeo {

enum class Property {
    strict_convexity,
    uc_modulus,
    nonsquare_sup,
    nonsquare_angle_inf,
    exposed,
    extreme,
    dunkl_williams,
};

enum class Verdict { witness_found, no_witness_found, inconclusive };

const char* to_string(Property p) noexcept;
const char* to_string(Verdict v) noexcept;

struct ProbeOptions {
    std::size_t samples = 10000;
    std::size_t refine_iters = 200;
    std::uint64_t seed = 0;
    double tol = 1e-7;
    /// Minimum ||x - y|| for a pair to count as two distinct points in the
    /// strict-convexity probe.
    double separation = 0.1;
};

struct ProbeReport {
    Property property;
    Verdict verdict;
    /// Human-facing reading of the verdict ("not-strictly-convex", "exposed", ...).
    std::string classification;
    std::vector<Vector> witness;
    std::optional<double> value;
    std::map<std::string, double> extras;
    // config echo
    std::optional<double> epsilon;
    std::optional<Vector> point;
    ProbeOptions options;
};

/// Searches for distinct unit x, y (||x - y|| >= separation) with midpoint
/// norm >= 1 - tol; for smooth specs also for separated pairs with
/// g(x, y) >= 1 - tol (the equality case g(x,y) = ||x|| ||y||).
ProbeReport strict_convexity_probe(const NormSpec& spec, const ProbeOptions& opt = {});

/// value = smallest 1 - ||(x+y)/2|| found over unit pairs with ||x - y|| >= eps;
/// an upper bound on the modulus of convexity delta(eps).
ProbeReport uc_modulus(const NormSpec& spec, double eps, const ProbeOptions& opt = {});

/// value = largest min(||(x+y)/2||, ||(x-y)/2||) found over unit pairs; a lower
/// bound on the sup, which is < 1 exactly for uniformly non-square norms.
ProbeReport nonsquare_sup(const NormSpec& spec, const ProbeOptions& opt = {});

/// value = smallest tan(theta(x,y)/2) found over unit pairs with ||x - y|| >= eps.
ProbeReport nonsq_angle_inf(const NormSpec& spec, double eps, const ProbeOptions& opt = {});

/// Exposedness of the unit-sphere point x0 through the set {y in S : g(x0, y) = 1}.
/// Maximizers within tol of x0 only: "exposed"; one farther than 10 tol:
/// "not-exposed"; anything in between: "inconclusive". Only climbs that ran
/// to convergence count as maximizers; on a curved sphere an unfinished climb
/// sits at g >= 1 - tol already ~sqrt(tol) away from x0.
ProbeReport exposed_check(const NormSpec& spec, const Vector& x0, const ProbeOptions& opt = {});

/// Searches y, z in the ball with (y + z)/2 = x0 and ||y - z|| > tol. Polyhedral
/// specs use an exact vertex test (rank of the active functionals).
ProbeReport extreme_check(const NormSpec& spec, const Vector& x0, const ProbeOptions& opt = {});

/// Worst slack of ||x/||x|| - y/||y|| || <= 4 ||x - y|| / (||x|| + ||y||) on random pairs.
ProbeReport dunkl_williams_check(const NormSpec& spec, const ProbeOptions& opt = {});

}  // namespace normgeo
