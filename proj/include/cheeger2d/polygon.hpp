#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "vec2.hpp"

namespace cheeger2d {

inline constexpr double kVertexTol = 1e-12;   // repeated-vertex / edge-death tolerance
inline constexpr double kChainTol = 1e-10;    // chain closure tolerance

struct BBox {
    Vec2 lo{0, 0}, hi{0, 0};
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
};

// Strictly convex polygon, counter-clockwise vertex order. The constructor
// enforces the invariants: at least 3 vertices, no repeated vertices within
// 1e-12, and strictly positive cross product at every vertex (collinear
// triples are rejected, not merged, so that vertex fans stay well defined).
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
        validate();
    }

    const std::vector<Vec2>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    const Vec2& operator[](std::size_t i) const { return v_[i]; }
    const Vec2& vertex(std::size_t i) const { return v_[i % v_.size()]; }

    double area() const {
        double a = 0.0;
        for (std::size_t i = 0, n = v_.size(); i < n; ++i)
            a += cross(v_[i], v_[(i + 1) % n]);
        return 0.5 * a;
    }

    double perimeter() const {
        double p = 0.0;
        for (std::size_t i = 0, n = v_.size(); i < n; ++i)
            p += dist(v_[i], v_[(i + 1) % n]);
        return p;
    }

    // Outward unit normal of edge i (from vertex i to vertex i+1).
    Vec2 edge_normal(std::size_t i) const {
        Vec2 d = v_[(i + 1) % v_.size()] - v_[i];
        return normalized(Vec2{d.y, -d.x});
    }

    // Support offset of edge i: the edge lies on {x : <n_i, x> = b_i}.
    double edge_offset(std::size_t i) const { return dot(edge_normal(i), v_[i]); }

    BBox bounding_box() const {
        BBox b{v_[0], v_[0]};
        for (const Vec2& p : v_) {
            b.lo.x = std::min(b.lo.x, p.x);
            b.lo.y = std::min(b.lo.y, p.y);
            b.hi.x = std::max(b.hi.x, p.x);
            b.hi.y = std::max(b.hi.y, p.y);
        }
        return b;
    }

    bool contains(const Vec2& x, double tol = 0.0) const {
        for (std::size_t i = 0, n = v_.size(); i < n; ++i) {
            Vec2 d = v_[(i + 1) % n] - v_[i];
            if (cross(d, x - v_[i]) < -tol * norm(d)) return false;
        }
        return true;
    }

private:
    void validate() const {
        const std::size_t n = v_.size();
        if (n < 3) throw invalid_region("polygon needs at least 3 vertices");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (dist(v_[i], v_[j]) <= kVertexTol)
                    throw invalid_region("repeated polygon vertices");
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 a = v_[(i + 1) % n] - v_[i];
            Vec2 b = v_[(i + 2) % n] - v_[(i + 1) % n];
            if (!(cross(a, b) > 0.0))
                throw invalid_region("polygon is not strictly convex CCW");
        }
    }

    std::vector<Vec2> v_;
};

struct Disk {
    Vec2 center;
    double radius = 0.0;

    Disk(Vec2 c, double r) : center(c), radius(r) {
        if (!(r > 0.0)) throw invalid_region("disk radius must be positive");
    }

    bool contains(const Vec2& x, double tol = 0.0) const {
        return dist(x, center) <= radius + tol;
    }
};

// Uniform input for all solvers.
using Domain = std::variant<ConvexPolygon, Disk>;

inline double domain_area(const Domain& d) {
    if (const auto* p = std::get_if<ConvexPolygon>(&d)) return p->area();
    const Disk& b = std::get<Disk>(d);
    return 3.14159265358979323846 * b.radius * b.radius;
}

inline double domain_perimeter(const Domain& d) {
    if (const auto* p = std::get_if<ConvexPolygon>(&d)) return p->perimeter();
    const Disk& b = std::get<Disk>(d);
    return 2.0 * 3.14159265358979323846 * b.radius;
}

inline BBox domain_bounding_box(const Domain& d) {
    if (const auto* p = std::get_if<ConvexPolygon>(&d)) return p->bounding_box();
    const Disk& b = std::get<Disk>(d);
    return {b.center - Vec2{b.radius, b.radius}, b.center + Vec2{b.radius, b.radius}};
}

inline bool domain_contains(const Domain& d, const Vec2& x, double tol = 0.0) {
    if (const auto* p = std::get_if<ConvexPolygon>(&d)) return p->contains(x, tol);
    return std::get<Disk>(d).contains(x, tol);
}

// High ridge of a convex polygon: a point (a == b) or a segment.
struct Ridge {
    Vec2 a, b;
    bool is_point() const { return dist(a, b) <= 1e-9; }
};

inline Vec2 closest_point_on_segment(const Vec2& a, const Vec2& b, const Vec2& x) {
    Vec2 d = b - a;
    double len2 = norm2(d);
    if (len2 == 0.0) return a;
    double t = std::clamp(dot(x - a, d) / len2, 0.0, 1.0);
    return a + d * t;
}

inline double dist_to_ridge(const Ridge& r, const Vec2& x) {
    return dist(x, closest_point_on_segment(r.a, r.b, x));
}

struct Projection {
    double d = 0.0;
    Vec2 point;
};

// Euclidean projection onto the closed polygon (singleton by convexity):
// d = 0 with proj = x inside, nearest boundary point otherwise.
inline Projection dist_project(const Vec2& x, const ConvexPolygon& poly) {
    if (poly.contains(x)) return {0.0, x};
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    double best = std::numeric_limits<double>::infinity();
    Vec2 bestp = v[0];
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 c = closest_point_on_segment(v[i], v[(i + 1) % n], x);
        double d = dist(x, c);
        if (d < best) {
            best = d;
            bestp = c;
        }
    }
    return {best, bestp};
}

// Distance from x to the complement of the polygon (depth inside D, negative
// outside is not reported: returns 0 outside).
inline double depth_inside(const ConvexPolygon& poly, const Vec2& x) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = poly.size(); i < n; ++i)
        d = std::min(d, poly.edge_offset(i) - dot(poly.edge_normal(i), x));
    return std::max(0.0, d);
}

inline double depth_inside(const Domain& dom, const Vec2& x) {
    if (const auto* p = std::get_if<ConvexPolygon>(&dom)) return depth_inside(*p, x);
    const Disk& b = std::get<Disk>(dom);
    return std::max(0.0, b.radius - dist(x, b.center));
}

// Andrew monotone chain; returns CCW hull with strictly convex corners
// (collinear points dropped). May return fewer than 3 points for degenerate
// input.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return dist(a, b) <= kVertexTol; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= kVertexTol) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= kVertexTol) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

} // namespace cheeger2d
