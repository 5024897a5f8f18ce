#pragma once

// Independent reference computations. Nothing here calls into the library's
// derivative, search or duality code; norms are re-implemented from their
// definitions.

#include <functional>
#include <vector>

namespace oracle {

using Point = std::vector<double>;
using NormFn = std::function<double(const Point&)>;

/// ||x||_p straight from the power sum (p = 0 encodes infinity).
double lp_norm(const Point& x, double p);

/// Gauge of the hull of the unit disks centred at (+-c, 0), by bisection on
/// t with the membership test x/t in K.
double stadium_norm(const Point& x, double c);

/// Closed-form g of l^p, 1 <= p < inf: ||x||^{2-p} sum |x_i|^{p-1} sgn(x_i) y_i, sgn(0) = 0.
double lp_g(const Point& x, const Point& y, double p);

/// g of l-inf: ||x|| (max + min) / 2 of sgn(x_i) y_i over the argmax set of |x_i|.
double linf_g(const Point& x, const Point& y);

/// max{ |x|_2, lambda |x|_inf } on R^2.
double kt_norm(const Point& x, double lambda);

/// tan(theta / 2) from a g value and the two norms; +inf at cos = -1.
double tan_half(double g, double nx, double ny);

/// The representer of f under l^p, 1 < p < inf: x_i = ||f||_{p'}^{2-p'} |f_i|^{p'-1} sgn(f_i).
Point lp_representer(const Point& f, double p);

struct BoundaryVerdict {
    bool exposed;
    bool extreme;
    double face_diameter;   ///< smallest face diameter over the exposing candidates
    double best_reflection; ///< largest ||b - x0|| with 2 x0 - b in the ball
};

/// Classifies the unit-sphere point x0 of a planar norm by enumerating
/// `points` boundary points and `points` supporting directions.
/// exposed: some supporting functional's maximizing face is {x0} (diameter below
/// a few grid spacings); extreme: no boundary point b at distance >= 1e-3 has
/// 2 x0 - b in the ball.
BoundaryVerdict classify_boundary_point(const NormFn& norm, const Point& x0, int points = 10000);

}  // namespace oracle
