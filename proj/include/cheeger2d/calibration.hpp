#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cheeger.hpp"
#include "cutlocus.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace cheeger2d {

enum class RegionTag { CheegerCore, Annulus, Kite, Exterior };

inline const char* to_string(RegionTag t) {
    switch (t) {
        case RegionTag::CheegerCore: return "CheegerCore";
        case RegionTag::Annulus: return "Annulus";
        case RegionTag::Kite: return "Kite";
        default: return "Exterior";
    }
}

// One component of the exterior calibration region, attached to a singular
// vertex of D^delta: the normal cone clipped by the two offset constraints,
// outside the closed ball of radius delta.
struct KiteCell {
    VertexFan fan;
    double delta = 0.0;

    bool contains(const Vec2& x, double tol = 1e-9) const {
        Vec2 p = x - fan.vertex;
        if (cross(fan.nu_minus, p) < -tol || cross(p, fan.nu_plus) < -tol) return false;
        if (dot(p, fan.nu_plus) > delta + tol || dot(p, fan.nu_minus) > delta + tol) return false;
        return norm(p) >= delta - tol;
    }

    // Unit field in the scaled local frame at the vertex: p = lambda (x - x_j),
    // a = <p, nu> - sqrt(1 - <p, nu_perp>^2), q = p - a nu. |q| = 1 identically
    // while the square-root argument stays positive, which kite membership
    // guarantees (it is at least cos^2 of the half angle).
    Vec2 field(const Vec2& x, double lambda) const {
        Vec2 p = lambda * (x - fan.vertex);
        double s = dot(p, fan.bisector);
        double t = dot(p, perp(fan.bisector));
        double arg = 1.0 - t * t;
        if (arg < 0.0) throw field_error("kite evaluation outside its admissible strip");
        double a = s - std::sqrt(arg);
        return p - a * fan.bisector;
    }
};

struct Classified {
    RegionTag tag = RegionTag::Exterior;
    int kite = -1;
};

// Piecewise evaluator for the calibration field of Omega_lambda over D:
// the Cheeger core carries only the divergence value h_D (the field there is
// an existence statement), the annulus carries the cut-locus field, and each
// kite carries the explicit local closed form.
class CalibrationField {
public:
    CalibrationField(Domain domain, double lambda, double bisect_tol = 1e-11)
        : solver_(std::move(domain), bisect_tol),
          lambda_(lambda),
          cheeger_(solve_cheeger(solver_.domain())),
          omega_(omega_lambda(solver_.domain(), lambda)) {
        if (!(lambda > cheeger_.h))
            throw out_of_domain("lambda must exceed the Cheeger constant");
        delta_ = 1.0 / lambda;
        if (std::get_if<ConvexPolygon>(&solver_.domain())) {
            auto core = solver_.erosion(delta_);
            for (const VertexFan& f : vertex_fans(*core)) kites_.push_back({f, delta_});
        }
    }

    double lambda() const { return lambda_; }
    double h() const { return cheeger_.h; }
    double delta() const { return delta_; }
    const Domain& domain() const { return solver_.domain(); }
    const CutLocusSolver& solver() const { return solver_; }
    const ArcRegion& omega() const { return omega_; }
    const ArcRegion& cheeger_set() const { return cheeger_.cheeger_set; }
    const CheegerResult& cheeger() const { return cheeger_; }
    const std::vector<KiteCell>& kites() const { return kites_; }

    // Dispatch over the three-zone construction. On the measure-zero
    // interface rho = 1/lambda the annulus wins over the kite.
    Classified classify(const Vec2& x) const {
        double r = solver_.rho(x);
        if (r > 1.0 / cheeger_.h) return {RegionTag::CheegerCore, -1};
        if (r >= delta_) return {RegionTag::Annulus, -1};
        for (std::size_t j = 0; j < kites_.size(); ++j)
            if (kites_[j].contains(x)) return {RegionTag::Kite, static_cast<int>(j)};
        return {RegionTag::Exterior, -1};
    }

    // clamp(1/rho, h_D, lambda): h_D on the core, 1/rho on the annulus,
    // lambda on the kites.
    double div_value(const Vec2& x) const {
        double r = solver_.rho(x);
        if (r <= delta_) return lambda_;
        if (r >= 1.0 / cheeger_.h) return cheeger_.h;
        return 1.0 / r;
    }

    Vec2 eval(const Vec2& x) const {
        Classified c = classify(x);
        switch (c.tag) {
            case RegionTag::Annulus: return solver_.q_rho(x);
            case RegionTag::Kite: return kites_[static_cast<std::size_t>(c.kite)].field(x, lambda_);
            case RegionTag::CheegerCore:
                throw field_error("field not constructed inside the Cheeger core");
            default:
                throw field_error("point falls in a boundary band");
        }
    }

    // Distance to the nearest interface where the field or its divergence may
    // be non-smooth: domain boundary, both arc-region boundaries, the central
    // set boundary, and the kite cone edges.
    double interface_distance(const Vec2& x) const {
        double d = depth_inside(domain(), x);
        d = std::min(d, omega_.boundary_distance(x));
        d = std::min(d, cheeger_.cheeger_set.boundary_distance(x));
        d = std::min(d, std::abs(dist_to_ridge(solver_.high_ridge(), x) - solver_.inradius()));
        const auto* poly = std::get_if<ConvexPolygon>(&domain());
        for (const KiteCell& k : kites_) {
            for (const Vec2& dir : {k.fan.nu_minus, k.fan.nu_plus}) {
                double tmax = std::numeric_limits<double>::infinity();
                double c = dot(k.fan.nu_minus, k.fan.nu_plus);
                if (c > 1e-12) tmax = k.delta / c;
                if (poly) {
                    for (std::size_t i = 0; i < poly->size(); ++i) {
                        double dn = dot(poly->edge_normal(i), dir);
                        if (dn > 1e-12)
                            tmax = std::min(tmax, (poly->edge_offset(i) -
                                                   dot(poly->edge_normal(i), k.fan.vertex)) / dn);
                    }
                }
                if (tmax > k.delta + 1e-12) {
                    Vec2 a = k.fan.vertex + k.delta * dir;
                    Vec2 b = k.fan.vertex + tmax * dir;
                    d = std::min(d, dist(x, closest_point_on_segment(a, b, x)));
                }
            }
        }
        return d;
    }

private:
    CutLocusSolver solver_;
    double lambda_;
    double delta_ = 0.0;
    CheegerResult cheeger_;
    ArcRegion omega_;
    std::vector<KiteCell> kites_;
};

struct VerifyTolerances {
    double norm = 1e-10;        // (a) | |q| - 1 |
    double divergence = 1e-3;   // (b) finite-difference divergence defect
    double trace = 1e-8;        // (c) annulus/kite mismatch on the arcs
    double boundary = 1e-6;     // (d) |q . nu_D - 1| on the domain boundary
    double duality = 2e-2;      // (e) quadrature vs geometric m(lambda, D)
    double primal = 1e-9;       // (f) competitor slack floor
    double band = 1e-2;         // interface exclusion band for (a), (b)
    double fd_step = 1e-5;      // central-difference step
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    double lambda = 0.0;
    int grid_n = 0;
    int competitors = 0;
    std::uint64_t seed = 0;
    double max_norm_defect = 0.0;
    double max_divergence_defect = 0.0;
    double max_trace_mismatch = 0.0;
    double max_boundary_trace_defect = 0.0;
    double quadrature_value = 0.0;
    double geometric_value = 0.0;
    double duality_gap = 0.0;
    double min_competitor_slack = 0.0;
    std::vector<CheckResult> checks;
    bool pass = false;
};

// Random strictly convex polygon inside the domain: hull of k uniform points,
// redrawn until strictly convex. Deterministic given the generator state.
inline ConvexPolygon random_convex_polygon(const Domain& domain, Rng& rng) {
    BBox bb = domain_bounding_box(domain);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int k = rng.uniform_int(3, 12);
        std::vector<Vec2> pts;
        pts.reserve(static_cast<std::size_t>(k));
        while (static_cast<int>(pts.size()) < k) {
            Vec2 p{rng.uniform(bb.lo.x, bb.hi.x), rng.uniform(bb.lo.y, bb.hi.y)};
            if (domain_contains(domain, p)) pts.push_back(p);
        }
        std::vector<Vec2> hull = convex_hull(std::move(pts));
        if (hull.size() < 3) continue;
        try {
            return ConvexPolygon(std::move(hull));
        } catch (const invalid_region&) {
            continue;
        }
    }
    throw error("failed to sample a strictly convex competitor polygon");
}

namespace detail {

inline void push_check(VerificationReport& r, const std::string& name, double value,
                       double tol, bool pass) {
    r.checks.push_back({name, value, tol, pass});
    r.pass = r.pass && pass;
}

} // namespace detail

// Numerical certificate for the optimality of Omega_lambda:
//   (a) unit norm of the field on annulus and kite samples,
//   (b) finite-difference divergence against the exact piecewise value,
//   (c) field continuity across the free-boundary arcs,
//   (d) normal trace of the cut-locus field on the domain boundary,
//   (e) duality integral against the exact geometric value of m(lambda, D),
//   (f) primal sampling with random convex competitors.
inline VerificationReport verify(const CalibrationField& field, int grid_n, int competitors,
                                 std::uint64_t seed, const VerifyTolerances& tols = {}) {
    if (grid_n < 50) throw out_of_domain("verification grid needs at least 50 cells per side");
    VerificationReport rep;
    rep.lambda = field.lambda();
    rep.grid_n = grid_n;
    rep.competitors = competitors;
    rep.seed = seed;
    rep.pass = true;

    const Domain& dom = field.domain();
    const double lambda = field.lambda();
    BBox bb = domain_bounding_box(dom);
    const double hx = bb.width() / grid_n;
    const double hy = bb.height() / grid_n;
    const double cell = hx * hy;
    const double h = tols.fd_step;

    struct RowStat {
        double norm_defect = 0.0;
        double div_defect = 0.0;
        double integral = 0.0;
    };
    std::vector<RowStat> rows(static_cast<std::size_t>(grid_n));

    parallel_for(static_cast<std::size_t>(grid_n), [&](std::size_t j) {
        RowStat st;
        double y = bb.lo.y + (static_cast<double>(j) + 0.5) * hy;
        for (int i = 0; i < grid_n; ++i) {
            Vec2 p{bb.lo.x + (i + 0.5) * hx, y};
            if (!domain_contains(dom, p)) continue;
            st.integral += field.div_value(p) - lambda;
            if (field.interface_distance(p) < tols.band) continue;
            Classified c = field.classify(p);
            if (c.tag != RegionTag::Annulus && c.tag != RegionTag::Kite) continue;
            try {
                Vec2 q = field.eval(p);
                st.norm_defect = std::max(st.norm_defect, std::abs(norm(q) - 1.0));
                double div_fd =
                    (field.eval({p.x + h, p.y}).x - field.eval({p.x - h, p.y}).x +
                     field.eval({p.x, p.y + h}).y - field.eval({p.x, p.y - h}).y) /
                    (2.0 * h);
                st.div_defect = std::max(st.div_defect, std::abs(div_fd - field.div_value(p)));
            } catch (const field_error&) {
                // stencil straddled an interface despite the band; skip
            }
        }
        rows[j] = st;
    });

    std::vector<double> row_integrals(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        rep.max_norm_defect = std::max(rep.max_norm_defect, rows[j].norm_defect);
        rep.max_divergence_defect = std::max(rep.max_divergence_defect, rows[j].div_defect);
        row_integrals[j] = rows[j].integral;
    }
    rep.quadrature_value = pairwise_sum(std::move(row_integrals)) * cell;

    // (c) both closed forms along each free-boundary arc
    for (const KiteCell& k : field.kites()) {
        const int samples = 64;
        double a0 = angle_of(k.fan.nu_minus) + 1e-6;
        double a1 = angle_of(k.fan.nu_minus) + 2.0 * k.fan.half_angle - 1e-6;
        for (int s = 0; s < samples; ++s) {
            double th = a0 + (a1 - a0) * s / (samples - 1);
            Vec2 x = k.fan.vertex + k.delta * from_angle(th);
            if (!domain_contains(dom, x, -1e-9)) continue;
            Vec2 qa = field.solver().q_rho(x);
            Vec2 qk = k.field(x, lambda);
            rep.max_trace_mismatch = std::max(rep.max_trace_mismatch, norm(qa - qk));
        }
    }

    // (d) normal trace of the cut-locus field on the boundary, away from the
    // closed central set
    if (const auto* poly = std::get_if<ConvexPolygon>(&dom)) {
        const CutLocusSolver& solver = field.solver();
        for (std::size_t e = 0; e < poly->size(); ++e) {
            Vec2 a = (*poly)[e];
            Vec2 b = poly->vertex(e + 1);
            Vec2 n = poly->edge_normal(e);
            const int samples = 128;
            for (int s = 1; s < samples; ++s) {
                Vec2 x = lerp(a, b, static_cast<double>(s) / samples);
                if (dist_to_ridge(solver.high_ridge(), x) <= solver.inradius() + 1e-9) continue;
                double trace = dot(solver.q_rho(x), n);
                rep.max_boundary_trace_defect =
                    std::max(rep.max_boundary_trace_defect, std::abs(trace - 1.0));
            }
        }
    }

    // (e) duality certificate
    rep.geometric_value = m_lambda(dom, lambda).value;
    rep.duality_gap = std::abs(rep.quadrature_value - rep.geometric_value);

    // (f) primal sampling
    Rng rng(seed);
    rep.min_competitor_slack = std::numeric_limits<double>::infinity();
    for (int c = 0; c < competitors; ++c) {
        ConvexPolygon f = random_convex_polygon(dom, rng);
        double slack = f.perimeter() - lambda * f.area() - rep.geometric_value;
        rep.min_competitor_slack = std::min(rep.min_competitor_slack, slack);
    }
    if (competitors <= 0) rep.min_competitor_slack = 0.0;

    detail::push_check(rep, "unit_norm", rep.max_norm_defect, tols.norm,
                       rep.max_norm_defect <= tols.norm);
    detail::push_check(rep, "divergence", rep.max_divergence_defect, tols.divergence,
                       rep.max_divergence_defect <= tols.divergence);
    detail::push_check(rep, "arc_trace", rep.max_trace_mismatch, tols.trace,
                       rep.max_trace_mismatch <= tols.trace);
    detail::push_check(rep, "boundary_trace", rep.max_boundary_trace_defect, tols.boundary,
                       rep.max_boundary_trace_defect <= tols.boundary);
    detail::push_check(rep, "duality_gap", rep.duality_gap, tols.duality,
                       rep.duality_gap <= tols.duality);
    detail::push_check(rep, "primal_slack", rep.min_competitor_slack, -tols.primal,
                       rep.min_competitor_slack >= -tols.primal);
    return rep;
}

// Integral curves of the calibration field, seeded just outside the Cheeger
// set and followed until they leave the domain. The last step is bisected so
// each polyline ends within ~1e-4 of the domain boundary.
inline std::vector<std::vector<Vec2>> field_streamlines(const CalibrationField& field,
                                                        int count) {
    std::vector<std::vector<Vec2>> lines;
    const Domain& dom = field.domain();
    BBox bb = domain_bounding_box(dom);
    double step = std::max(bb.width(), bb.height()) / 400.0;
    for (const auto& [p, n] : field.cheeger_set().sample_boundary(static_cast<std::size_t>(count))) {
        std::vector<Vec2> line;
        Vec2 x = p + 1e-6 * n;
        if (!domain_contains(dom, x)) continue;
        line.push_back(x);
        for (int it = 0; it < 4000; ++it) {
            Vec2 q;
            try {
                q = field.eval(x);
            } catch (const field_error&) {
                break;
            }
            double s = step;
            while (s > 1e-6 && !domain_contains(dom, x + s * q)) s *= 0.5;
            if (s <= 1e-6) break;
            x = x + s * q;
            line.push_back(x);
            if (depth_inside(dom, x) < 1e-4) break;
        }
        if (line.size() >= 2) lines.push_back(std::move(line));
    }
    return lines;
}

struct FieldSample {
    Vec2 p;
    RegionTag tag = RegionTag::Exterior;
    bool has_field = false;
    Vec2 q;
    double div = 0.0;
};

// Grid samples with region tags; rows outside the closed domain are omitted,
// core and band rows carry no field components.
inline std::vector<FieldSample> export_field_samples(const CalibrationField& field, int grid_n) {
    if (grid_n < 2) throw out_of_domain("grid needs at least 2 points per side");
    BBox bb = domain_bounding_box(field.domain());
    std::vector<FieldSample> out;
    for (int j = 0; j < grid_n; ++j) {
        double y = bb.lo.y + bb.height() * j / (grid_n - 1);
        for (int i = 0; i < grid_n; ++i) {
            Vec2 p{bb.lo.x + bb.width() * i / (grid_n - 1), y};
            if (!domain_contains(field.domain(), p, 1e-12)) continue;
            FieldSample s;
            s.p = p;
            s.tag = field.classify(p).tag;
            s.div = field.div_value(p);
            if (s.tag == RegionTag::Annulus || s.tag == RegionTag::Kite) {
                try {
                    s.q = field.eval(p);
                    s.has_field = true;
                } catch (const field_error&) {
                    s.has_field = false;
                }
            }
            out.push_back(s);
        }
    }
    return out;
}

} // namespace cheeger2d
