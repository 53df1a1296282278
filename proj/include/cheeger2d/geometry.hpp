#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "arc_region.hpp"
#include "errors.hpp"
#include "polygon.hpp"
#include "vec2.hpp"

namespace cheeger2d {

inline std::pair<double, double> area_perimeter(const ConvexPolygon& p) {
    return {p.area(), p.perimeter()};
}

inline std::pair<double, double> area_perimeter(const ArcRegion& r) {
    return {r.area(), r.perimeter()};
}

// ---------------------------------------------------------------------------
// Half-plane clipping on a fixed-capacity vertex ring. Used by erosion and by
// the inradius search; allocation-free so the cut-locus bisections stay cheap.
// ---------------------------------------------------------------------------

struct PolyRing {
    static constexpr int cap = 96;
    std::array<Vec2, cap> p;
    int n = 0;
};

// Keep {x : <nrm, x> <= b}.
inline void clip_halfplane(const PolyRing& in, const Vec2& nrm, double b, PolyRing& out) {
    out.n = 0;
    for (int i = 0; i < in.n; ++i) {
        const Vec2& cur = in.p[i];
        const Vec2& nxt = in.p[(i + 1) % in.n];
        double sc = b - dot(nrm, cur);
        double sn = b - dot(nrm, nxt);
        if (sc >= 0.0) out.p[out.n++] = cur;
        if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
            double t = sc / (sc - sn);
            out.p[out.n++] = lerp(cur, nxt, t);
        }
    }
}

// Intersection of all edge half-planes offset inward by delta. The result may
// be degenerate (fewer than 3 distinct vertices) near the inradius.
inline void erode_ring(const ConvexPolygon& poly, double delta, PolyRing& out) {
    PolyRing a, b;
    a.n = static_cast<int>(poly.size());
    for (int i = 0; i < a.n; ++i) a.p[i] = poly[i];
    PolyRing* cur = &a;
    PolyRing* nxt = &b;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        clip_halfplane(*cur, poly.edge_normal(i), poly.edge_offset(i) - delta, *nxt);
        std::swap(cur, nxt);
        if (cur->n == 0) break;
    }
    out = *cur;
}

inline double ring_dist(const PolyRing& ring, const Vec2& x) {
    if (ring.n == 0) return std::numeric_limits<double>::infinity();
    if (ring.n == 1) return dist(x, ring.p[0]);
    bool inside = ring.n >= 3;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ring.n; ++i) {
        const Vec2& p0 = ring.p[i];
        const Vec2& p1 = ring.p[(i + 1) % ring.n];
        if (inside && cross(p1 - p0, x - p0) < 0.0) inside = false;
        best = std::min(best, dist(x, closest_point_on_segment(p0, p1, x)));
    }
    return inside ? 0.0 : best;
}

// Drop edge-death artifacts: vertices repeated within 1e-12 and collinear
// leftovers from clip lines that grazed a vertex.
inline std::vector<Vec2> tidy_ring(const PolyRing& ring) {
    std::vector<Vec2> v;
    v.reserve(static_cast<std::size_t>(ring.n));
    for (int i = 0; i < ring.n; ++i) v.push_back(ring.p[i]);
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2& prev = v[(i + v.size() - 1) % v.size()];
            const Vec2& cur = v[i];
            const Vec2& next = v[(i + 1) % v.size()];
            if (dist(prev, cur) <= kVertexTol || cross(cur - prev, next - cur) <= 0.0) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return v;
}

// Inner parallel body at depth delta. Requires 0 <= delta < inradius.
inline ConvexPolygon erode(const ConvexPolygon& poly, double delta) {
    if (delta < 0.0) throw out_of_domain("erosion depth must be non-negative");
    if (delta == 0.0) return poly;
    PolyRing ring;
    erode_ring(poly, delta, ring);
    std::vector<Vec2> v = tidy_ring(ring);
    if (v.size() < 3) throw degenerate_erosion("erosion collapsed: depth reaches the inradius");
    return ConvexPolygon(std::move(v));
}

// ---------------------------------------------------------------------------
// Dilation (Minkowski sum with the closed disk of radius delta)
// ---------------------------------------------------------------------------

inline ArcRegion dilate(const ConvexPolygon& core, double delta) {
    if (!(delta > 0.0)) throw out_of_domain("dilation radius must be positive");
    std::vector<ChainElement> chain;
    const std::size_t n = core.size();
    chain.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 ni = core.edge_normal(i);
        chain.push_back(ChainSegment{core[i] + delta * ni, core.vertex(i + 1) + delta * ni});
        Vec2 nj = core.edge_normal((i + 1) % n);
        double a0 = angle_of(ni);
        double span = std::atan2(cross(ni, nj), dot(ni, nj));
        chain.push_back(ChainArc{core.vertex(i + 1), delta, a0, a0 + span});
    }
    return ArcRegion(std::move(chain));
}

inline ArcRegion dilate(const Vec2& point, double delta) {
    if (!(delta > 0.0)) throw out_of_domain("dilation radius must be positive");
    return ArcRegion::full_disk(point, delta);
}

inline ArcRegion dilate_segment(const Vec2& a, const Vec2& b, double delta) {
    if (!(delta > 0.0)) throw out_of_domain("dilation radius must be positive");
    if (dist(a, b) <= kVertexTol) return dilate(a, delta);
    Vec2 d = normalized(b - a);
    Vec2 n{d.y, -d.x};
    double th = angle_of(n);
    std::vector<ChainElement> chain{
        ChainSegment{a + delta * n, b + delta * n},
        ChainArc{b, delta, th, th + kPi},
        ChainSegment{b - delta * n, a - delta * n},
        ChainArc{a, delta, th + kPi, th + 2.0 * kPi},
    };
    return ArcRegion(std::move(chain));
}

inline ArcRegion dilate(const Ridge& ridge, double delta) {
    return ridge.is_point() ? dilate(ridge.a, delta) : dilate_segment(ridge.a, ridge.b, delta);
}

// ---------------------------------------------------------------------------
// Inradius and high ridge
// ---------------------------------------------------------------------------

struct InradiusResult {
    double inradius = 0.0;
    Ridge ridge;
};

namespace detail {

// Least-squares solve of <n_i, x> + r = b_i over the active constraints.
inline bool solve_center_ls(const std::vector<Vec2>& ns, const std::vector<double>& bs,
                            Vec2& x, double& r) {
    double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
    double r1 = 0, r2 = 0, r3 = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const Vec2& n = ns[i];
        a11 += n.x * n.x; a12 += n.x * n.y; a13 += n.x;
        a22 += n.y * n.y; a23 += n.y;       a33 += 1.0;
        r1 += n.x * bs[i]; r2 += n.y * bs[i]; r3 += bs[i];
    }
    double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                 a13 * (a12 * a23 - a22 * a13);
    if (std::abs(det) < 1e-14) return false;
    double d1 = r1 * (a22 * a33 - a23 * a23) - a12 * (r2 * a33 - a23 * r3) +
                a13 * (r2 * a23 - a22 * r3);
    double d2 = a11 * (r2 * a33 - r3 * a23) - r1 * (a12 * a33 - a23 * a13) +
                a13 * (a12 * r3 - r2 * a13);
    double d3 = a11 * (a22 * r3 - a23 * r2) - a12 * (a12 * r3 - a23 * r1) +
                r1 * (a12 * a23 - a22 * a13);
    x = {d1 / det, d2 / det};
    r = d3 / det;
    return true;
}

} // namespace detail

// Inradius R_D = max r s.t. <n_i, x> + r <= b_i for all edges, together with
// the optimal face (a point or a segment for polygons).
inline InradiusResult inradius_highridge(const ConvexPolygon& poly) {
    const std::size_t m = poly.size();
    std::vector<Vec2> ns(m);
    std::vector<double> bs(m);
    for (std::size_t i = 0; i < m; ++i) {
        ns[i] = poly.edge_normal(i);
        bs[i] = poly.edge_offset(i);
    }
    BBox bb = poly.bounding_box();
    double hi = 0.5 * std::min(bb.width(), bb.height()) + 1e-9;
    double lo = 0.0;
    PolyRing ring;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        erode_ring(poly, mid, ring);
        (ring.n >= 3 ? lo : hi) = mid;
    }
    double r0 = lo;
    double scale = std::max(1.0, r0);
    erode_ring(poly, std::max(0.0, r0 - 1e-9 * scale), ring);
    Vec2 x0{0, 0};
    for (int i = 0; i < ring.n; ++i) x0 += ring.p[i];
    x0 = x0 / std::max(1, ring.n);

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < m; ++i)
        if (bs[i] - dot(ns[i], x0) - r0 <= 1e-5 * scale) active.push_back(i);

    // Antipodal active pair: the optimum is pinched between two parallel
    // edges, the ridge slides along their mid-line.
    for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            std::size_t i = active[a], j = active[b];
            if (dot(ns[i], ns[j]) < -1.0 + 1e-12) {
                double r = 0.5 * (bs[i] + bs[j]);
                Vec2 anchor = x0 - ns[i] * (dot(ns[i], x0) - (bs[i] - r));
                Vec2 u = perp(ns[i]);
                double tmin = -std::numeric_limits<double>::infinity();
                double tmax = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < m; ++k) {
                    double ak = dot(ns[k], u);
                    double ck = bs[k] - r - dot(ns[k], anchor);
                    if (ak > 1e-12) tmax = std::min(tmax, ck / ak);
                    else if (ak < -1e-12) tmin = std::max(tmin, ck / ak);
                }
                if (tmin > tmax) tmin = tmax = 0.5 * (tmin + tmax);
                return {r, Ridge{anchor + tmin * u, anchor + tmax * u}};
            }
        }
    }

    std::vector<Vec2> an;
    std::vector<double> ab;
    for (std::size_t i : active) {
        an.push_back(ns[i]);
        ab.push_back(bs[i]);
    }
    Vec2 xs = x0;
    double rs = r0;
    if (active.size() >= 3 && detail::solve_center_ls(an, ab, xs, rs)) {
        // keep the refined solution only if it is feasible
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) worst = std::min(worst, bs[i] - dot(ns[i], xs));
        if (worst >= rs - 1e-9 * scale) return {worst, Ridge{xs, xs}};
    }
    return {r0, Ridge{x0, x0}};
}

// ---------------------------------------------------------------------------
// Vertex fans and the corner constant
// ---------------------------------------------------------------------------

// Normal-cone data at a polygon vertex: the outward normals of the two
// incident edges, their bisector, and the half opening angle.
struct VertexFan {
    Vec2 vertex;
    Vec2 nu_minus;   // outward normal of the edge into the vertex
    Vec2 nu_plus;    // outward normal of the edge out of the vertex
    Vec2 bisector;
    double half_angle = 0.0; // in (0, pi/2)
};

inline std::vector<VertexFan> vertex_fans(const ConvexPolygon& poly) {
    const std::size_t n = poly.size();
    std::vector<VertexFan> fans;
    fans.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 nm = poly.edge_normal((i + n - 1) % n);
        Vec2 np = poly.edge_normal(i);
        VertexFan f;
        f.vertex = poly[i];
        f.nu_minus = nm;
        f.nu_plus = np;
        f.bisector = normalized(nm + np);
        f.half_angle = 0.5 * std::atan2(cross(nm, np), dot(nm, np));
        fans.push_back(f);
    }
    return fans;
}

inline double k_boundary(const VertexFan& fan) {
    return 0.5 * (1.0 + dot(fan.nu_plus, fan.nu_minus));
}

// k at an arbitrary boundary point: the fan formula at a vertex, 1 on the
// regular (edge-interior) part.
inline double k_boundary(const ConvexPolygon& poly, const Vec2& x) {
    Projection pr = dist_project(x, poly);
    if (pr.d > 1e-9) throw out_of_domain("point is not on the polygon boundary");
    if (poly.contains(x) && depth_inside(poly, x) > 1e-9)
        throw out_of_domain("point is interior, not on the boundary");
    auto fans = vertex_fans(poly);
    for (const VertexFan& f : fans)
        if (dist(f.vertex, x) <= 1e-9) return k_boundary(f);
    return 1.0;
}

} // namespace cheeger2d
