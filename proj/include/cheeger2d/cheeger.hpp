#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "arc_region.hpp"
#include "geometry.hpp"
#include "polygon.hpp"
#include "rootfind.hpp"

namespace cheeger2d {

struct CheegerResult {
    double delta_star = 0.0;  // h = 1/delta_star
    double h = 0.0;           // Cheeger constant
    double lambda_D = 0.0;    // P(D)/|D|
    double theta_D = 0.0;     // calibrability constant of D (inf at corners)
    ArcRegion cheeger_set;
};

// delta* is the unique zero of |D^delta| - pi delta^2 on [0, R_D); the map is
// strictly decreasing there (erosion area shrinks, pi delta^2 grows).
inline CheegerResult solve_cheeger(const Domain& domain) {
    if (const auto* disk = std::get_if<Disk>(&domain)) {
        double R = disk->radius;
        return {0.5 * R, 2.0 / R, 2.0 / R, 1.0, ArcRegion::full_disk(disk->center, R)};
    }
    const ConvexPolygon& poly = std::get<ConvexPolygon>(domain);
    double R = inradius_highridge(poly).inradius;
    PolyRing ring;
    auto gap = [&](double d) {
        erode_ring(poly, d, ring);
        double a = 0.0;
        for (int i = 0; i < ring.n; ++i)
            a += 0.5 * cross(ring.p[i], ring.p[(i + 1) % ring.n]);
        return a - kPi * d * d;
    };
    double delta = bisect_decreasing(gap, 0.0, R * (1.0 - 1e-14), 1e-12, 200);
    ConvexPolygon core = erode(poly, delta);
    return {delta, 1.0 / delta, poly.perimeter() / poly.area(),
            std::numeric_limits<double>::infinity(), dilate(core, delta)};
}

// Union of all balls of radius 1/lambda contained in D, as the
// erode-then-dilate region at depth 1/lambda. At lambda = 1/R_D this is the
// maximal-balls set U_D (the high ridge dilated by R_D).
inline ArcRegion omega_lambda(const Domain& domain, double lambda) {
    if (const auto* disk = std::get_if<Disk>(&domain)) {
        if (lambda < 1.0 / disk->radius - 1e-12)
            throw out_of_domain("lambda below 1/R_D: no ball of radius 1/lambda fits");
        return ArcRegion::full_disk(disk->center, disk->radius);
    }
    const ConvexPolygon& poly = std::get<ConvexPolygon>(domain);
    InradiusResult ir = inradius_highridge(poly);
    double delta = 1.0 / lambda;
    if (delta > ir.inradius + 1e-12)
        throw out_of_domain("lambda below 1/R_D: no ball of radius 1/lambda fits");
    if (delta >= ir.inradius - 1e-12) return dilate(ir.ridge, ir.inradius);
    return dilate(erode(poly, delta), delta);
}

struct MReport {
    double lambda = 0.0;
    double value = 0.0;                   // m(lambda, D) <= 0
    std::optional<ArcRegion> optimal_set; // empty below h_D
    double lambda_ratio = 0.0;            // P/|.| of the optimal set, 0 if empty
};

// m(lambda, D) = min{P(Omega) - lambda |Omega| : Omega subset of D}. Zero with
// the empty minimizer below h_D; at the threshold the Cheeger set is reported
// (the maximal optimizer); above it the unique minimizer is Omega_lambda.
inline MReport m_lambda(const Domain& domain, double lambda) {
    if (lambda < 0.0) throw out_of_domain("lambda must be non-negative");
    CheegerResult ch = solve_cheeger(domain);
    if (lambda < ch.h * (1.0 - 1e-12)) return {lambda, 0.0, std::nullopt, 0.0};
    if (lambda <= ch.h * (1.0 + 1e-12)) {
        auto [a, p] = area_perimeter(ch.cheeger_set);
        return {lambda, 0.0, ch.cheeger_set, p / a};
    }
    ArcRegion omega = omega_lambda(domain, lambda);
    auto [a, p] = area_perimeter(omega);
    return {lambda, p - lambda * a, std::move(omega), p / a};
}

// Calibrability constant of a C^{1,1} convex region in the plane:
// max{1, kappa_inf / lambda_Omega}, infinite as soon as the boundary has a
// corner.
inline double theta_constant(const Disk& disk) {
    (void)disk;
    return 1.0; // kappa = 1/R against lambda = 2/R
}

inline double theta_constant(const ConvexPolygon&) {
    return std::numeric_limits<double>::infinity();
}

inline double theta_constant(const ArcRegion& region) {
    const auto& elems = region.elements();
    const std::size_t n = elems.size();
    double kappa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (const auto* a = std::get_if<ChainArc>(&elems[i])) kappa = std::max(kappa, 1.0 / a->radius);
        double jump = std::remainder(element_normal_angle_start(elems[(i + 1) % n]) -
                                         element_normal_angle_end(elems[i]),
                                     2.0 * kPi);
        if (std::abs(jump) > 1e-9) return std::numeric_limits<double>::infinity();
    }
    if (kappa == 0.0) return std::numeric_limits<double>::infinity();
    double ratio = region.perimeter() / region.area();
    return std::max(1.0, kappa / ratio);
}

inline double theta_constant(const Domain& domain) {
    if (const auto* disk = std::get_if<Disk>(&domain)) return theta_constant(*disk);
    return theta_constant(std::get<ConvexPolygon>(domain));
}

// Positive lower bound for the first critical value of the free-boundary
// problem, as a function of the Cheeger constant.
inline double lambda0_lower_bound(double h) {
    if (!(h > 0.0)) throw out_of_domain("Cheeger constant must be positive");
    if (h <= 0.5 * kPi) return 1.0 - std::cos(h);
    return 1.0 + h - 0.5 * kPi;
}

// theta_D lambda_D <= lambda_1 <= theta_D lambda_D + 1 (infinite at corners).
inline std::pair<double, double> lambda1_bounds(double theta_D, double lambda_D) {
    if (!(theta_D >= 1.0)) throw out_of_domain("calibrability constant is at least 1");
    if (std::isinf(theta_D)) {
        double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    return {theta_D * lambda_D, theta_D * lambda_D + 1.0};
}

} // namespace cheeger2d
