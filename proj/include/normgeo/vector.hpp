#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace normgeo {

/// Dense real coordinate vector on R^n.
///
/// Always has at least one coordinate and every coordinate is finite; both are
/// checked on construction, so any Vector in hand is a valid point.
class Vector {
public:
    explicit Vector(std::vector<double> coords);
    Vector(std::initializer_list<double> coords);

    static Vector zeros(std::size_t dim);
    static Vector unit(std::size_t dim, std::size_t axis);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return coords_; }

    bool is_zero() const noexcept;

    /// Copy with coordinate `i` replaced.
    Vector with(std::size_t i, double value) const;

    Vector operator-() const;
    friend Vector operator+(const Vector& a, const Vector& b);
    friend Vector operator-(const Vector& a, const Vector& b);
    friend Vector operator*(double s, const Vector& v);
    friend Vector operator*(const Vector& v, double s) { return s * v; }
    friend Vector operator/(const Vector& v, double s) { return (1.0 / s) * v; }
    friend bool operator==(const Vector& a, const Vector& b) = default;

    std::string to_string() const;

private:
    std::vector<double> coords_;
};

/// Standard pairing sum_i a_i b_i.
double dot(const Vector& a, const Vector& b);
double euclidean_norm(const Vector& v);
double max_abs_diff(const Vector& a, const Vector& b);

void require_same_dim(const Vector& a, const Vector& b);

}  // namespace normgeo
