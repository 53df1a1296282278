#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cheeger.hpp"
#include "geometry.hpp"
#include "polygon.hpp"

namespace cheeger2d {

struct LevelArc {
    VertexFan fan;
    ChainArc arc;
};

struct RhoSample {
    Vec2 p;
    bool inside = false;
    double rho = 0.0;
};

// Cut-locus potential of a convex domain: rho(x) is the largest depth delta
// with d(x, D^delta) <= delta. It equals the inradius on the closed central
// set U_D and is found elsewhere by bisection on the predicate
// alpha(x, delta) > tol, which handles the boundary plateau where alpha
// vanishes on an initial interval (so rho and its boundary trace tau share
// one code path).
class CutLocusSolver {
public:
    explicit CutLocusSolver(Domain domain, double bisect_tol = 1e-11)
        : domain_(std::move(domain)), tol_(bisect_tol) {
        if (const auto* poly = std::get_if<ConvexPolygon>(&domain_)) {
            InradiusResult ir = inradius_highridge(*poly);
            inradius_ = ir.inradius;
            ridge_ = ir.ridge;
            const std::size_t m = poly->size();
            normals_.resize(m);
            offsets_.resize(m);
            for (std::size_t i = 0; i < m; ++i) {
                normals_[i] = poly->edge_normal(i);
                offsets_[i] = poly->edge_offset(i);
            }
        } else {
            const Disk& d = std::get<Disk>(domain_);
            inradius_ = d.radius;
            ridge_ = Ridge{d.center, d.center};
        }
    }

    CutLocusSolver(const CutLocusSolver& o)
        : domain_(o.domain_), tol_(o.tol_), inradius_(o.inradius_), ridge_(o.ridge_),
          normals_(o.normals_), offsets_(o.offsets_) {}

    const Domain& domain() const { return domain_; }
    double inradius() const { return inradius_; }
    const Ridge& high_ridge() const { return ridge_; }
    double bisect_tol() const { return tol_; }

    bool in_central_set_closure(const Vec2& x) const {
        return dist_to_ridge(ridge_, x) <= inradius_;
    }

    // d(x, D^delta) - delta
    double alpha(const Vec2& x, double delta) const {
        require_inside(x);
        if (delta < 0.0 || delta >= inradius_)
            throw out_of_domain("erosion depth outside [0, R_D)");
        if (const auto* disk = std::get_if<Disk>(&domain_)) {
            double reach = dist(x, disk->center) - (disk->radius - delta);
            return std::max(0.0, reach) - delta;
        }
        if (auto core = erosion_or_null(delta)) return dist_project(x, *core).d - delta;
        return dist_to_ridge(ridge_, x) - delta;
    }

    double rho(const Vec2& x) const {
        require_inside(x);
        if (const auto* disk = std::get_if<Disk>(&domain_)) {
            (void)disk;
            return inradius_; // the whole disk is its own central set
        }
        const ConvexPolygon& poly = std::get<ConvexPolygon>(domain_);
        for (const Vec2& v : poly.vertices())
            if (dist(v, x) <= kVertexTol) return 0.0;
        if (dist_to_ridge(ridge_, x) <= inradius_ - 1e-12) return inradius_;
        double depth = depth_inside(poly, x);
        // On the boundary the slack alpha touches zero quadratically at tau,
        // which caps bisection accuracy near sqrt(tol); the normal-ray form
        // crosses linearly instead.
        if (depth <= 1e-12) return boundary_reach(poly, x);

        const double pred_tol = 1e-15;
        double lo = depth;
        double hi = inradius_ - std::max(1e-12, 1e-12 * inradius_);
        if (alpha_fast(x, hi) <= pred_tol) return inradius_;
        int iters = 0;
        while (hi - lo > tol_ && iters++ < 200) {
            double mid = 0.5 * (lo + hi);
            (alpha_fast(x, mid) > pred_tol ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Boundary trace: the normal distance to the cut locus, zero at corners.
    double tau(const Vec2& x) const {
        if (const auto* disk = std::get_if<Disk>(&domain_)) {
            if (std::abs(dist(x, disk->center) - disk->radius) > 1e-9)
                throw out_of_domain("point is not on the boundary");
            return disk->radius;
        }
        const ConvexPolygon& poly = std::get<ConvexPolygon>(domain_);
        if (dist_project(x, poly).d > 1e-9 || depth_inside(poly, x) > 1e-9)
            throw out_of_domain("point is not on the boundary");
        return rho(x);
    }

    // Unit field (x - proj_{D^rho}(x)) / rho. Defined away from the closed
    // central set and from corners.
    Vec2 q_rho(const Vec2& x) const {
        require_inside(x);
        if (std::get_if<Disk>(&domain_))
            throw field_error("field undefined: a disk is all central set");
        if (in_central_set_closure(x))
            throw field_error("field undefined on the closed central set");
        double r = rho(x);
        if (r <= 1e-9) throw field_error("field undefined at a corner");
        Vec2 proj;
        if (auto core = erosion_or_null(r)) {
            proj = dist_project(x, *core).point;
        } else {
            proj = closest_point_on_segment(ridge_.a, ridge_.b, x);
        }
        Vec2 v = x - proj;
        return v / norm(v);
    }

    // One arc of the level set {rho = delta} per singular vertex of D^delta:
    // center at the vertex, radius delta, spanning the vertex fan.
    std::vector<LevelArc> level_arcs(double delta) const {
        if (!(delta > 0.0) || delta >= inradius_)
            throw out_of_domain("level depth outside (0, R_D)");
        std::vector<LevelArc> arcs;
        if (std::get_if<Disk>(&domain_)) return arcs;
        auto core = erosion(delta);
        for (const VertexFan& f : vertex_fans(*core)) {
            double a0 = angle_of(f.nu_minus);
            arcs.push_back({f, ChainArc{f.vertex, delta, a0, a0 + 2.0 * f.half_angle}});
        }
        return arcs;
    }

    // n x n samples over the bounding box, row-major from the lower-left;
    // points outside the closed domain are marked absent.
    std::vector<RhoSample> sample_rho_grid(int n) const {
        if (n < 2) throw out_of_domain("grid needs at least 2 points per side");
        BBox bb = domain_bounding_box(domain_);
        std::vector<RhoSample> out;
        out.reserve(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j) {
            double y = bb.lo.y + bb.height() * j / (n - 1);
            for (int i = 0; i < n; ++i) {
                double x = bb.lo.x + bb.width() * i / (n - 1);
                Vec2 p{x, y};
                RhoSample s{p, false, 0.0};
                if (domain_contains(domain_, p, 1e-12)) {
                    s.inside = true;
                    s.rho = rho(p);
                }
                out.push_back(s);
            }
        }
        return out;
    }

    // Memoized erosion, keyed by delta rounded to 1e-13 so bisection
    // re-queries hit. Safe under concurrent reads and inserts; the insert cap
    // bounds memory, later misses are computed fresh.
    std::shared_ptr<const ConvexPolygon> erosion(double delta) const {
        auto p = erosion_or_null(delta);
        if (!p) throw degenerate_erosion("erosion collapsed: depth reaches the inradius");
        return p;
    }

private:
    void require_inside(const Vec2& x) const {
        if (!domain_contains(domain_, x, 1e-9))
            throw out_of_domain("point lies outside the closed domain");
    }

    std::shared_ptr<const ConvexPolygon> erosion_or_null(double delta) const {
        const ConvexPolygon& poly = std::get<ConvexPolygon>(domain_);
        std::int64_t key = std::llround(delta * 1e13);
        {
            std::shared_lock lock(cache_mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        std::shared_ptr<const ConvexPolygon> made;
        try {
            made = std::make_shared<const ConvexPolygon>(erode(poly, delta));
        } catch (const degenerate_erosion&) {
            return nullptr;
        }
        std::unique_lock lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        if (cache_.size() < kCacheCap) cache_.emplace(key, made);
        return made;
    }

    // Largest t with x still the boundary projection of x - t nu(x): bisection
    // on t - d(x - t nu, D^c) > tol, which vanishes up to the cut distance and
    // then grows with slope bounded away from zero.
    double boundary_reach(const ConvexPolygon& poly, const Vec2& x) const {
        std::size_t edge = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < poly.size(); ++i) {
            double d = dist(x, closest_point_on_segment(poly[i], poly.vertex(i + 1), x));
            if (d < best) {
                best = d;
                edge = i;
            }
        }
        Vec2 n = normals_[edge];
        auto past_cut = [&](double t) { return t - depth_inside(poly, x - t * n) > 1e-13; };
        if (!past_cut(inradius_)) return inradius_;
        return bisect_predicate(past_cut, 0.0, inradius_, 1e-12);
    }

    // Allocation-free alpha for the bisection loop.
    double alpha_fast(const Vec2& x, double delta) const {
        PolyRing a, b;
        const std::size_t m = normals_.size();
        const ConvexPolygon& poly = std::get<ConvexPolygon>(domain_);
        a.n = static_cast<int>(m);
        for (std::size_t i = 0; i < m; ++i) a.p[i] = poly[i];
        PolyRing* cur = &a;
        PolyRing* nxt = &b;
        for (std::size_t i = 0; i < m && cur->n > 0; ++i) {
            clip_halfplane(*cur, normals_[i], offsets_[i] - delta, *nxt);
            std::swap(cur, nxt);
        }
        if (cur->n < 3) return dist_to_ridge(ridge_, x) - delta;
        return ring_dist(*cur, x) - delta;
    }

    static constexpr std::size_t kCacheCap = 1u << 16;

    Domain domain_;
    double tol_;
    double inradius_ = 0.0;
    Ridge ridge_;
    std::vector<Vec2> normals_;
    std::vector<double> offsets_;
    mutable std::shared_mutex cache_mutex_;
    mutable std::unordered_map<std::int64_t, std::shared_ptr<const ConvexPolygon>> cache_;
};

} // namespace cheeger2d
