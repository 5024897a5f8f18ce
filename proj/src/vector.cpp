#include "normgeo/vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normgeo/errors.hpp"

namespace normgeo {

namespace {

void validate(const std::vector<double>& c) {
    if (c.empty()) throw InvalidArgument("vector must have at least one coordinate");
    for (double v : c) {
        if (!std::isfinite(v)) throw InvalidArgument("vector coordinates must be finite");
    }
}

}  // namespace

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) { validate(coords_); }

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) { validate(coords_); }

Vector Vector::zeros(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

Vector Vector::unit(std::size_t dim, std::size_t axis) {
    std::vector<double> c(dim, 0.0);
    if (axis >= dim) throw InvalidArgument("unit vector axis out of range");
    c[axis] = 1.0;
    return Vector(std::move(c));
}

bool Vector::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v == 0.0; });
}

Vector Vector::with(std::size_t i, double value) const {
    std::vector<double> c = coords_;
    c.at(i) = value;
    return Vector(std::move(c));
}

Vector Vector::operator-() const { return -1.0 * *this; }

Vector operator+(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Vector(std::move(c));
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Vector(std::move(c));
}

Vector operator*(double s, const Vector& v) {
    std::vector<double> c(v.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * v[i];
    return Vector(std::move(c));
}

std::string Vector::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i];
    os << ')';
    return os.str();
}

double dot(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double euclidean_norm(const Vector& v) {
    double scale = 0.0;
    for (double c : v.coords()) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double c : v.coords()) s += (c / scale) * (c / scale);
    return scale * std::sqrt(s);
}

double max_abs_diff(const Vector& a, const Vector& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void require_same_dim(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

}  // namespace normgeo
