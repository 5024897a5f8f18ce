#include "normgeo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace normgeo::linalg {

std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows;
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::nullopt;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        }
        if (std::abs(a(piv, col)) <= 1e-13 * scale) return std::nullopt;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * x[c];
        x[i] = s / a(i, i);
    }
    return x;
}

std::size_t rank(Matrix a, double rel_tol) {
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        }
        if (std::abs(a(piv, col)) <= rel_tol * scale) continue;
        for (std::size_t c = 0; c < a.cols; ++c) std::swap(a(piv, c), a(r, c));
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            const double f = a(i, col) / a(r, col);
            for (std::size_t c = col; c < a.cols; ++c) a(i, c) -= f * a(r, c);
        }
        ++r;
    }
    return r;
}

std::optional<Matrix> cholesky(const Matrix& a) {
    const std::size_t n = a.rows;
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) return std::nullopt;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b) {
    const std::size_t n = l.rows;
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

namespace {

// Modified Gram-Schmidt of `candidates` against the already-accepted rows.
Matrix complete_basis(const std::vector<std::vector<double>>& fixed, std::size_t n,
                      double rel_tol) {
    std::vector<std::vector<double>> accepted;
    for (const auto& f : fixed) {
        std::vector<double> v = f;
        for (const auto& q : accepted) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i) d += v[i] * q[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= d * q[i];
        }
        double nv = 0.0;
        for (double c : v) nv += c * c;
        nv = std::sqrt(nv);
        double nf = 0.0;
        for (double c : f) nf += c * c;
        if (nv <= rel_tol * std::sqrt(nf) || nv == 0.0) continue;
        for (double& c : v) c /= nv;
        accepted.push_back(std::move(v));
    }
    const std::size_t fixed_count = accepted.size();
    for (std::size_t axis = 0; axis < n && accepted.size() < n; ++axis) {
        std::vector<double> v(n, 0.0);
        v[axis] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : accepted) {
                double d = 0.0;
                for (std::size_t i = 0; i < n; ++i) d += v[i] * q[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= d * q[i];
            }
        }
        double nv = 0.0;
        for (double c : v) nv += c * c;
        nv = std::sqrt(nv);
        if (nv < 1e-8) continue;
        for (double& c : v) c /= nv;
        accepted.push_back(std::move(v));
    }
    Matrix out(accepted.size() - fixed_count, n);
    for (std::size_t r = fixed_count; r < accepted.size(); ++r) {
        for (std::size_t i = 0; i < n; ++i) out(r - fixed_count, i) = accepted[r][i];
    }
    return out;
}

}  // namespace

Matrix orthogonal_complement(const std::vector<double>& normal) {
    return complete_basis({normal}, normal.size(), 1e-14);
}

Matrix null_space(const Matrix& a, double rel_tol) {
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < a.rows; ++r) {
        rows.emplace_back(a.data.begin() + static_cast<std::ptrdiff_t>(r * a.cols),
                          a.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * a.cols));
    }
    return complete_basis(rows, a.cols, rel_tol);
}

}  // namespace normgeo::linalg
