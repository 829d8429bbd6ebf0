#pragma once

// Planar vector and 2x2 matrix value types used throughout the library.

#include <array>
#include <cmath>

namespace atugv {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Row-major 2x2 matrix: [[xx, xy], [yx, yy]].
struct Matrix2 {
    double xx = 1.0;
    double xy = 0.0;
    double yx = 0.0;
    double yy = 1.0;

    static constexpr Matrix2 identity() { return {}; }
    static constexpr Matrix2 diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }

    constexpr double operator()(int row, int col) const {
        return row == 0 ? (col == 0 ? xx : xy) : (col == 0 ? yx : yy);
    }
    constexpr std::array<double, 4> entries() const { return {xx, xy, yx, yy}; }

    constexpr double determinant() const { return xx * yy - xy * yx; }
    constexpr double trace() const { return xx + yy; }
    constexpr Matrix2 transposed() const { return {xx, yx, xy, yy}; }

    friend constexpr Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
        return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
                a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
    }
    friend constexpr Vec2 operator*(const Matrix2& m, Vec2 v) {
        return {m.xx * v.x + m.xy * v.y, m.yx * v.x + m.yy * v.y};
    }
    friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

inline bool is_finite(const Matrix2& m) {
    return std::isfinite(m.xx) && std::isfinite(m.xy) && std::isfinite(m.yx) &&
           std::isfinite(m.yy);
}

}  // namespace atugv
