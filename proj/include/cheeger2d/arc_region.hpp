#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "polygon.hpp"
#include "vec2.hpp"

namespace cheeger2d {

inline constexpr double kPi = 3.14159265358979323846;

struct ChainSegment {
    Vec2 p0, p1;
};

// Circular arc traversed counter-clockwise from angle a0 to a1 (a1 > a0).
struct ChainArc {
    Vec2 center;
    double radius = 0.0;
    double a0 = 0.0, a1 = 0.0;

    Vec2 start() const { return center + radius * from_angle(a0); }
    Vec2 end() const { return center + radius * from_angle(a1); }
    double span() const { return a1 - a0; }
};

using ChainElement = std::variant<ChainSegment, ChainArc>;

inline Vec2 element_start(const ChainElement& e) {
    if (const auto* s = std::get_if<ChainSegment>(&e)) return s->p0;
    return std::get<ChainArc>(e).start();
}

inline Vec2 element_end(const ChainElement& e) {
    if (const auto* s = std::get_if<ChainSegment>(&e)) return s->p1;
    return std::get<ChainArc>(e).end();
}

inline double element_length(const ChainElement& e) {
    if (const auto* s = std::get_if<ChainSegment>(&e)) return dist(s->p0, s->p1);
    const ChainArc& a = std::get<ChainArc>(e);
    return a.radius * a.span();
}

inline double element_normal_angle_start(const ChainElement& e) {
    if (const auto* s = std::get_if<ChainSegment>(&e)) {
        Vec2 d = s->p1 - s->p0;
        return angle_of(Vec2{d.y, -d.x});
    }
    return std::get<ChainArc>(e).a0;
}

inline double element_normal_angle_end(const ChainElement& e) {
    if (const auto* s = std::get_if<ChainSegment>(&e)) {
        Vec2 d = s->p1 - s->p0;
        return angle_of(Vec2{d.y, -d.x});
    }
    return std::get<ChainArc>(e).a1;
}

// Convex region bounded by a closed CCW chain of segments and circular arcs.
// Arc spans up to pi are allowed so that a full disk is representable as a
// two-arc chain and a stadium as two segments plus two half arcs.
class ArcRegion {
public:
    explicit ArcRegion(std::vector<ChainElement> elements) : elems_(std::move(elements)) {
        validate();
    }

    const std::vector<ChainElement>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }

    static ArcRegion full_disk(const Vec2& center, double radius) {
        return ArcRegion({ChainArc{center, radius, 0.0, kPi},
                          ChainArc{center, radius, kPi, 2.0 * kPi}});
    }

    double area() const {
        double a = 0.0;
        for (const ChainElement& e : elems_) {
            Vec2 p0 = element_start(e), p1 = element_end(e);
            a += 0.5 * cross(p0, p1);
            if (const auto* arc = std::get_if<ChainArc>(&e)) {
                double th = arc->span();
                a += 0.5 * arc->radius * arc->radius * (th - std::sin(th));
            }
        }
        return a;
    }

    double perimeter() const {
        double p = 0.0;
        for (const ChainElement& e : elems_) p += element_length(e);
        return p;
    }

    BBox bounding_box() const {
        BBox b{element_start(elems_[0]), element_start(elems_[0])};
        auto grow = [&](const Vec2& p) {
            b.lo.x = std::min(b.lo.x, p.x);
            b.lo.y = std::min(b.lo.y, p.y);
            b.hi.x = std::max(b.hi.x, p.x);
            b.hi.y = std::max(b.hi.y, p.y);
        };
        for (const ChainElement& e : elems_) {
            grow(element_start(e));
            grow(element_end(e));
            if (const auto* a = std::get_if<ChainArc>(&e)) {
                for (int q = 0; q < 4; ++q) {
                    double th = 0.5 * kPi * q;
                    if (angle_in_span(th, a->a0, a->a1))
                        grow(a->center + a->radius * from_angle(th));
                }
            }
        }
        return b;
    }

    // Exact membership for a convex chain: inside every segment's support
    // half-plane, and inside the arc's disk whenever the direction from the
    // arc center falls in the arc's normal range.
    bool contains(const Vec2& x, double tol = 0.0) const {
        for (const ChainElement& e : elems_) {
            if (const auto* s = std::get_if<ChainSegment>(&e)) {
                Vec2 d = s->p1 - s->p0;
                if (cross(d, x - s->p0) < -tol * norm(d)) return false;
            } else {
                const ChainArc& a = std::get<ChainArc>(e);
                Vec2 w = x - a.center;
                double r = norm(w);
                if (r > a.radius + tol && angle_in_span(angle_of(w), a.a0, a.a1))
                    return false;
            }
        }
        return true;
    }

    // Unsigned distance from x to the boundary chain.
    double boundary_distance(const Vec2& x) const {
        double best = std::numeric_limits<double>::infinity();
        for (const ChainElement& e : elems_) {
            if (const auto* s = std::get_if<ChainSegment>(&e)) {
                best = std::min(best, dist(x, closest_point_on_segment(s->p0, s->p1, x)));
            } else {
                const ChainArc& a = std::get<ChainArc>(e);
                Vec2 w = x - a.center;
                double r = norm(w);
                if (r > 0.0 && angle_in_span(angle_of(w), a.a0, a.a1)) {
                    best = std::min(best, std::abs(r - a.radius));
                } else {
                    best = std::min(best, dist(x, a.start()));
                    best = std::min(best, dist(x, a.end()));
                }
            }
        }
        return best;
    }

    // Negative inside, positive outside.
    double signed_distance(const Vec2& x) const {
        double d = boundary_distance(x);
        return contains(x) ? -d : d;
    }

    // k points spread uniformly in arclength, with outward unit normals.
    std::vector<std::pair<Vec2, Vec2>> sample_boundary(std::size_t k) const {
        std::vector<std::pair<Vec2, Vec2>> out;
        out.reserve(k);
        double total = perimeter();
        double step = total / static_cast<double>(k);
        double want = 0.5 * step;
        double acc = 0.0;
        for (const ChainElement& e : elems_) {
            double len = element_length(e);
            while (want < acc + len && out.size() < k) {
                double t = (want - acc) / len;
                if (const auto* s = std::get_if<ChainSegment>(&e)) {
                    Vec2 d = s->p1 - s->p0;
                    out.emplace_back(lerp(s->p0, s->p1, t), normalized(Vec2{d.y, -d.x}));
                } else {
                    const ChainArc& a = std::get<ChainArc>(e);
                    double th = a.a0 + t * a.span();
                    Vec2 n = from_angle(th);
                    out.emplace_back(a.center + a.radius * n, n);
                }
                want += step;
            }
            acc += len;
        }
        return out;
    }

    static bool angle_in_span(double theta, double a0, double a1) {
        double t = std::fmod(theta - a0, 2.0 * kPi);
        if (t < 0) t += 2.0 * kPi;
        return t <= a1 - a0;
    }

private:
    void validate() const {
        if (elems_.size() < 2) throw invalid_region("chain needs at least 2 elements");
        const std::size_t n = elems_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (dist(element_end(elems_[i]), element_start(elems_[(i + 1) % n])) > kChainTol)
                throw invalid_region("boundary chain is not closed");
            if (element_length(elems_[i]) <= kVertexTol)
                throw invalid_region("degenerate chain element");
            if (const auto* a = std::get_if<ChainArc>(&elems_[i])) {
                if (!(a->radius > 0.0)) throw invalid_region("arc radius must be positive");
                if (!(a->span() > 0.0) || a->span() > kPi + 1e-9)
                    throw invalid_region("arc span must lie in (0, pi]");
            }
        }
        // convexity: outward normal angle non-decreasing along the chain,
        // with one full turn in total
        double turn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (const auto* a = std::get_if<ChainArc>(&elems_[i])) turn += a->span();
            double jump = element_normal_angle_start(elems_[(i + 1) % n]) -
                          element_normal_angle_end(elems_[i]);
            jump = std::remainder(jump, 2.0 * kPi);
            if (jump < -1e-9) throw invalid_region("boundary chain is not convex");
            if (jump < 0) jump = 0;
            turn += jump;
        }
        if (std::abs(turn - 2.0 * kPi) > 1e-6)
            throw invalid_region("boundary chain does not make one CCW turn");
    }

    std::vector<ChainElement> elems_;
};

} // namespace cheeger2d
