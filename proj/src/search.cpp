#include "normgeo/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normgeo/errors.hpp"

namespace normgeo::search {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// x + step e_i, pushed back onto the sphere; nullopt if the move hits 0.
std::optional<Vector> perturb(const NormSpec& spec, const Vector& x, std::size_t i, double step) {
    const Vector moved = x.with(i, x[i] + step);
    if (moved.is_zero()) return std::nullopt;
    return normalize(spec, moved);
}

template <class T>
void keep_best(std::vector<T>& best, T cand, std::size_t k) {
    auto pos = std::find_if(best.begin(), best.end(), [&](const T& b) { return cand.value > b.value; });
    if (pos == best.end() && best.size() >= k) return;
    best.insert(pos, std::move(cand));
    if (best.size() > k) best.pop_back();
}

}  // namespace

PairResult climb_pair(const NormSpec& spec, const PairObjective& f, PairResult cur, std::size_t rounds,
                      double step, double min_step) {
    const std::size_t n = spec.dim();
    for (std::size_t r = 0; r < rounds && step >= min_step; ++r) {
        if (cur.value == std::numeric_limits<double>::infinity()) break;
        bool improved = false;
        for (std::size_t i = 0; i < 2 * n; ++i) {
            for (double s : {step, -step}) {
                const bool on_x = i < n;
                const auto moved = perturb(spec, on_x ? cur.x : cur.y, i % n, s);
                if (!moved) continue;
                const Vector& nx = on_x ? *moved : cur.x;
                const Vector& ny = on_x ? cur.y : *moved;
                const double v = f(nx, ny);
                if (v > cur.value) {
                    cur = PairResult{nx, ny, v};
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return cur;
}

PointResult climb_point(const NormSpec& spec, const PointObjective& f, PointResult cur, std::size_t rounds,
                        double step, double min_step) {
    const std::size_t n = spec.dim();
    for (std::size_t r = 0; r < rounds && step >= min_step; ++r) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (double s : {step, -step}) {
                const auto moved = perturb(spec, cur.x, i, s);
                if (!moved) continue;
                const double v = f(*moved);
                if (v > cur.value) {
                    cur = PointResult{*moved, v};
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    cur.converged = step < min_step;
    return cur;
}

PairResult maximize_pair(const NormSpec& spec, const PairObjective& f, const Options& opt,
                         std::span<const Vector> extra_points) {
    if (opt.samples == 0) throw InvalidArgument("samples must be at least 1");
    const std::vector<Vector> pts = sample_sphere(spec, 2 * opt.samples, opt.seed);
    std::vector<PairResult> best;
    const std::size_t k = std::max<std::size_t>(1, opt.starts);
    for (std::size_t i = 0; i < opt.samples; ++i) {
        const Vector& x = pts[2 * i];
        const Vector& y = pts[2 * i + 1];
        keep_best(best, PairResult{x, y, f(x, y)}, k);
    }
    for (const Vector& a : extra_points) {
        for (const Vector& b : extra_points) keep_best(best, PairResult{a, b, f(a, b)}, k);
    }
    PairResult out = best.front();
    if (out.value == kNegInf) return out;
    for (PairResult& s : best) {
        if (s.value == kNegInf) continue;
        PairResult r = climb_pair(spec, f, s, opt.refine_iters, opt.initial_step, opt.min_step);
        if (r.value > out.value) out = std::move(r);
    }
    return out;
}

std::vector<PointResult> maximize_point(const NormSpec& spec, const PointObjective& f, const Options& opt,
                                        std::span<const Vector> extra_points) {
    if (opt.samples == 0) throw InvalidArgument("samples must be at least 1");
    std::vector<PointResult> best;
    const std::size_t k = std::max<std::size_t>(1, opt.starts);
    for (const Vector& x : sample_sphere(spec, opt.samples, opt.seed)) keep_best(best, PointResult{x, f(x)}, k);
    for (const Vector& x : extra_points) keep_best(best, PointResult{x, f(x)}, k);
    std::vector<PointResult> out;
    for (PointResult& s : best) {
        if (s.value == kNegInf) continue;
        out.push_back(climb_point(spec, f, s, opt.refine_iters, opt.initial_step, opt.min_step));
    }
    std::stable_sort(out.begin(), out.end(), [](const PointResult& a, const PointResult& b) { return a.value > b.value; });
    return out;
}

}  // namespace normgeo::search
