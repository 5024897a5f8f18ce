#pragma once

// Random-start hill climbing on the unit sphere (and on products of two copies
// of it). Every iterate is re-normalized onto the sphere and infeasible moves
// are rejected, so whatever the search returns is an attained, feasible point.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "normgeo/norms.hpp"

namespace normgeo::search {

/// Objective to maximize; return -inf for infeasible arguments.
using PairObjective = std::function<double(const Vector&, const Vector&)>;
using PointObjective = std::function<double(const Vector&)>;

struct Options {
    std::size_t samples = 10000;
    std::size_t refine_iters = 200;
    std::uint64_t seed = 0;
    std::size_t starts = 4;       ///< best candidates that get refined
    double initial_step = 0.25;
    double min_step = 1e-15;
};

struct PairResult {
    Vector x;
    Vector y;
    double value;
};

struct PointResult {
    Vector x;
    double value;
    /// The climb ran its step down to min_step: x is a local maximizer up to rounding.
    bool converged = false;
};

/// Coordinate hill climbing of f(x, y) over S x S from (x, y).
PairResult climb_pair(const NormSpec& spec, const PairObjective& f, PairResult start, std::size_t rounds,
                      double initial_step, double min_step);

PointResult climb_point(const NormSpec& spec, const PointObjective& f, PointResult start, std::size_t rounds,
                        double initial_step, double min_step);

/// Maximizes f over pairs of unit vectors: `samples` random pairs plus every
/// pair drawn from `extra_points`, then refines the best `starts` candidates.
PairResult maximize_pair(const NormSpec& spec, const PairObjective& f, const Options& opt,
                         std::span<const Vector> extra_points = {});

/// Same for a single unit vector. Returns every refined start, best first.
std::vector<PointResult> maximize_point(const NormSpec& spec, const PointObjective& f, const Options& opt,
                                        std::span<const Vector> extra_points = {});

}  // namespace normgeo::search
