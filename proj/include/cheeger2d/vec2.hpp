#pragma once

#include <cmath>

namespace cheeger2d {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// z-component of a x b; positive when b is counter-clockwise from a
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline double norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::sqrt(v.x * v.x + v.y * v.y); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline Vec2 normalized(const Vec2& v) {
    double n = norm(v);
    return {v.x / n, v.y / n};
}

// counter-clockwise rotation by pi/2
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline Vec2 from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double angle_of(const Vec2& v) { return std::atan2(v.y, v.x); }

inline Vec2 lerp(const Vec2& a, const Vec2& b, double t) {
    return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

} // namespace cheeger2d
