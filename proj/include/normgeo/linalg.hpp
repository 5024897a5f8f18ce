#pragma once

// Small dense linear algebra for n <= ~8. Matrices are row-major.

#include <cstddef>
#include <optional>
#include <vector>

namespace normgeo::linalg {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Returns nullopt when A is numerically singular.
std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b);

/// Numerical rank via row reduction with relative pivot threshold.
std::size_t rank(Matrix a, double rel_tol = 1e-10);

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix,
/// nullopt if A is not positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

/// Solves (L L^T) x = b given the Cholesky factor L.
std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b);

/// Orthonormal (Euclidean) basis of the complement of `normal`, as n-1 rows.
Matrix orthogonal_complement(const std::vector<double>& normal);

/// Basis of the null space of the rows of `a` (Euclidean-orthonormal rows).
Matrix null_space(const Matrix& a, double rel_tol = 1e-10);

}  // namespace normgeo::linalg
