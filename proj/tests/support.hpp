#pragma once

#include <cmath>
#include <vector>

#include "cheeger2d/cheeger2d.hpp"

namespace testsupport {

using namespace cheeger2d;

inline ConvexPolygon unit_square() {
    return ConvexPolygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
}

inline ConvexPolygon rect_2x1() {
    return ConvexPolygon({{-1.0, -0.5}, {1.0, -0.5}, {1.0, 0.5}, {-1.0, 0.5}});
}

inline ConvexPolygon right_triangle() {
    return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
}

inline ConvexPolygon regular_polygon(int n, double circumradius = 1.0) {
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * kPi * i / n;
        v.push_back({circumradius * std::cos(th), circumradius * std::sin(th)});
    }
    return ConvexPolygon(std::move(v));
}

// Closed form for the cut-locus potential of the unit square centered at the
// origin; serves as the independent oracle for the bisection solver.
inline double rho_square_closed_form(const Vec2& p) {
    double u = std::abs(p.x);
    double v = std::abs(p.y);
    if (u * u + v * v < 0.25) return 0.5;
    return 1.0 - (u + v) + std::sqrt(2.0) * std::sqrt(std::max(0.0, (0.5 - u) * (0.5 - v)));
}

// Uniform point in a polygon by rejection from the bounding box.
inline Vec2 random_point_in(const ConvexPolygon& poly, Rng& rng) {
    BBox bb = poly.bounding_box();
    for (;;) {
        Vec2 p{rng.uniform(bb.lo.x, bb.hi.x), rng.uniform(bb.lo.y, bb.hi.y)};
        if (poly.contains(p)) return p;
    }
}

} // namespace testsupport
