#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mink {

/// A point or direction in the ambient plane.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double k) const { return {k * x, k * y}; }
    constexpr Vec2 operator/(double k) const { return {x / k, y / k}; }
    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double k, const Vec2& v) { return {k * v.x, k * v.y}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the cross product; positive when b is counterclockwise from a.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// Counterclockwise quarter turn.
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline double euclid_norm(const Vec2& v) { return std::hypot(v.x, v.y); }

/// 2x2 real matrix, row-major.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    constexpr Mat2() = default;
    constexpr Mat2(double m11, double m12, double m21, double m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {}

    static constexpr Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c};
    }
    /// Matrix with the given columns.
    static constexpr Mat2 from_columns(const Vec2& c1, const Vec2& c2) {
        return {c1.x, c2.x, c1.y, c2.y};
    }

    constexpr double det() const { return a11 * a22 - a12 * a21; }

    constexpr Vec2 apply(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    constexpr Vec2 operator*(const Vec2& v) const { return apply(v); }

    constexpr Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    constexpr Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }

    Mat2 inverse() const {
        const double d = det();
        if (std::abs(d) <= 1e-12) {
            throw std::domain_error("Mat2::inverse: singular matrix (|det| <= 1e-12)");
        }
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }

    double max_abs_entry() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }
};

/// Entry-wise max |A - B|.
inline double max_entry_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs_entry(); }

/// Solves [col1 col2] * (u, v) = rhs. Throws std::domain_error when the columns
/// are numerically dependent.
inline Vec2 solve_in_basis(const Vec2& col1, const Vec2& col2, const Vec2& rhs) {
    const double d = cross(col1, col2);
    if (std::abs(d) <= 1e-300) {
        throw std::domain_error("solve_in_basis: degenerate basis");
    }
    return {cross(rhs, col2) / d, cross(col1, rhs) / d};
}

}  // namespace mink
