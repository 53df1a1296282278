#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "support.hpp"

using namespace cheeger2d;
using testsupport::rect_2x1;
using testsupport::regular_polygon;
using testsupport::right_triangle;
using testsupport::unit_square;
using Catch::Approx;

namespace {

double steiner_area(const ConvexPolygon& core, double r) {
    return core.area() + core.perimeter() * r + kPi * r * r;
}

} // namespace

TEST_CASE("polygon invariants are enforced") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), invalid_region);
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), invalid_region); // collinear
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), invalid_region); // clockwise
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), invalid_region);
    // collinear middle vertex on an edge
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0.5, 0.0}, {1, 0}, {0, 1}}), invalid_region);
}

TEST_CASE("area and perimeter") {
    auto [sa, sp] = area_perimeter(unit_square());
    CHECK(sa == Approx(1.0).margin(1e-14));
    CHECK(sp == Approx(4.0).margin(1e-14));

    auto [ta, tp] = area_perimeter(right_triangle());
    CHECK(ta == Approx(0.5).margin(1e-14));
    CHECK(tp == Approx(2.0 + std::sqrt(2.0)).margin(1e-14));

    // side-0.8 square dilated by 0.1, against the Steiner formula
    ConvexPolygon core({{-0.4, -0.4}, {0.4, -0.4}, {0.4, 0.4}, {-0.4, 0.4}});
    ArcRegion dil = dilate(core, 0.1);
    auto [da, dp] = area_perimeter(dil);
    CHECK(da == Approx(steiner_area(core, 0.1)).epsilon(1e-12));
    CHECK(da == Approx(0.64 + 0.32 + 0.01 * kPi).epsilon(1e-12));
    CHECK(dp == Approx(core.perimeter() + 2.0 * kPi * 0.1).epsilon(1e-12));
}

TEST_CASE("inradius and high ridge") {
    auto sq = inradius_highridge(unit_square());
    CHECK(sq.inradius == Approx(0.5).margin(1e-10));
    CHECK(sq.ridge.is_point());
    CHECK(norm(sq.ridge.a) < 1e-9);

    auto re = inradius_highridge(rect_2x1());
    CHECK(re.inradius == Approx(0.5).margin(1e-10));
    CHECK_FALSE(re.ridge.is_point());
    std::set<double> xs{re.ridge.a.x, re.ridge.b.x};
    CHECK(*xs.begin() == Approx(-0.5).margin(1e-9));
    CHECK(*xs.rbegin() == Approx(0.5).margin(1e-9));
    CHECK(std::abs(re.ridge.a.y) < 1e-9);
    CHECK(std::abs(re.ridge.b.y) < 1e-9);

    // classical incircle: r = (a + b - c)/2 for a right triangle
    double r_oracle = (1.0 + 1.0 - std::sqrt(2.0)) / 2.0;
    auto tr = inradius_highridge(right_triangle());
    CHECK(tr.inradius == Approx(r_oracle).margin(1e-10));
    CHECK(tr.ridge.is_point());
    CHECK(tr.ridge.a.x == Approx(r_oracle).margin(1e-9));
    CHECK(tr.ridge.a.y == Approx(r_oracle).margin(1e-9));
}

TEST_CASE("erosion") {
    ConvexPolygon inner = erode(unit_square(), 0.1);
    REQUIRE(inner.size() == 4);
    for (const Vec2& v : inner.vertices()) {
        CHECK(std::abs(v.x) == Approx(0.4).margin(1e-12));
        CHECK(std::abs(v.y) == Approx(0.4).margin(1e-12));
    }

    CHECK_THROWS_AS(erode(unit_square(), 0.5), degenerate_erosion);
    CHECK_THROWS_AS(erode(unit_square(), -0.1), out_of_domain);

    // triangle erosion against the half-plane intersection oracle:
    // x >= d, y >= d, (x + y)/sqrt(2) <= 1/sqrt(2) - d
    double d = 0.1;
    ConvexPolygon te = erode(right_triangle(), d);
    REQUIRE(te.size() == 3);
    double s = 1.0 - d * std::sqrt(2.0);
    auto has_vertex = [&](Vec2 want) {
        for (const Vec2& v : te.vertices())
            if (dist(v, want) < 1e-10) return true;
        return false;
    };
    CHECK(has_vertex({d, d}));
    CHECK(has_vertex({s - d, d}));
    CHECK(has_vertex({d, s - d}));
}

TEST_CASE("dilation") {
    ArcRegion disk = dilate(Vec2{0.25, -1.0}, 0.5);
    CHECK(disk.size() == 2);
    CHECK(disk.area() == Approx(0.25 * kPi).epsilon(1e-12));
    CHECK(disk.perimeter() == Approx(kPi).epsilon(1e-12));

    ArcRegion rounded = dilate(unit_square(), 0.25);
    CHECK(rounded.size() == 8);
    CHECK(rounded.area() == Approx(steiner_area(unit_square(), 0.25)).epsilon(1e-12));
    CHECK(rounded.area() == Approx(1.0 + 1.0 + kPi / 16.0).epsilon(1e-12));

    ArcRegion stadium = dilate_segment({0, 0}, {1, 0}, 0.5);
    CHECK(stadium.size() == 4);
    CHECK(stadium.area() == Approx(1.0 + kPi / 4.0).epsilon(1e-12));
    CHECK(stadium.perimeter() == Approx(2.0 + kPi).epsilon(1e-12));

    CHECK_THROWS_AS(dilate(unit_square(), 0.0), out_of_domain);
}

TEST_CASE("projection onto a polygon") {
    ConvexPolygon sq = unit_square();
    auto inside = dist_project({0, 0}, sq);
    CHECK(inside.d == 0.0);
    CHECK(inside.point == Vec2{0, 0});

    auto edge = dist_project({1, 0}, sq);
    CHECK(edge.d == Approx(0.5).margin(1e-12));
    CHECK(dist(edge.point, {0.5, 0.0}) < 1e-12);

    auto corner = dist_project({1, 1}, sq);
    CHECK(corner.d == Approx(std::sqrt(2.0) / 2.0).margin(1e-12));
    CHECK(dist(corner.point, {0.5, 0.5}) < 1e-12);
}

TEST_CASE("vertex fans") {
    auto fans = vertex_fans(unit_square());
    REQUIRE(fans.size() == 4);
    const VertexFan* ne = nullptr;
    for (const auto& f : fans)
        if (dist(f.vertex, {0.5, 0.5}) < 1e-12) ne = &f;
    REQUIRE(ne != nullptr);
    CHECK(dist(ne->nu_minus, {1, 0}) < 1e-12);
    CHECK(dist(ne->nu_plus, {0, 1}) < 1e-12);
    CHECK(dist(ne->bisector, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}) < 1e-12);
    CHECK(ne->half_angle == Approx(kPi / 4.0).margin(1e-12));

    for (const auto& f : vertex_fans(regular_polygon(6)))
        CHECK(f.half_angle == Approx(kPi / 6.0).margin(1e-12));

    auto tf = vertex_fans(right_triangle());
    const VertexFan* at10 = nullptr;
    for (const auto& f : tf)
        if (dist(f.vertex, {1.0, 0.0}) < 1e-12) at10 = &f;
    REQUIRE(at10 != nullptr);
    CHECK(dist(at10->nu_minus, {0, -1}) < 1e-12);
    CHECK(dist(at10->nu_plus, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}) < 1e-12);
    CHECK(at10->half_angle == Approx(3.0 * kPi / 8.0).margin(1e-12));
}

TEST_CASE("corner constant k") {
    auto fans = vertex_fans(unit_square());
    CHECK(k_boundary(fans[0]) == Approx(0.5).margin(1e-12));
    CHECK(k_boundary(unit_square(), {0.5, 0.0}) == 1.0);
    auto hex = vertex_fans(regular_polygon(6));
    CHECK(k_boundary(hex[0]) == Approx(0.75).margin(1e-12));
    CHECK_THROWS_AS(k_boundary(unit_square(), {0.0, 0.0}), out_of_domain);
}

TEST_CASE("sum of vertex half-angles is a full turn") {
    Rng rng(7);
    Domain square{unit_square()};
    for (int trial = 0; trial < 20; ++trial) {
        ConvexPolygon poly = random_convex_polygon(square, rng);
        double total = 0.0;
        for (const auto& f : vertex_fans(poly)) total += 2.0 * f.half_angle;
        CHECK(total == Approx(2.0 * kPi).margin(1e-12));
    }
}

TEST_CASE("erosion is monotone and satisfies the Steiner identity") {
    Rng rng(11);
    Domain square{unit_square()};
    int done = 0;
    while (done < 25) {
        ConvexPolygon poly = random_convex_polygon(square, rng);
        double R = inradius_highridge(poly).inradius;
        double d1 = rng.uniform(0.05, 0.9) * R;
        double d0 = rng.uniform(0.0, 0.9) * d1;
        ConvexPolygon big = erode(poly, d0);
        ConvexPolygon small = erode(poly, d1);
        for (const Vec2& v : small.vertices()) CHECK(big.contains(v, 1e-9));
        CHECK(small.area() < big.area());

        ArcRegion back = dilate(small, d1 - d0 + 1e-3);
        double expect = steiner_area(small, d1 - d0 + 1e-3);
        CHECK(back.area() == Approx(expect).epsilon(1e-10));
        ++done;
    }
}

TEST_CASE("projection is idempotent") {
    Rng rng(13);
    Domain square{unit_square()};
    ConvexPolygon poly = random_convex_polygon(square, rng);
    for (int i = 0; i < 200; ++i) {
        Vec2 p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        auto pr = dist_project(p, poly);
        auto again = dist_project(pr.point, poly);
        CHECK(again.d < 1e-12);
        CHECK(dist(again.point, pr.point) < 1e-12);
    }
}

TEST_CASE("inner body is the ball-fitting set of a shallower body") {
    // erode(D, d) = {x in erode(D, d') : B(x, d - d') inside erode(D, d')}
    Rng rng(17);
    ConvexPolygon poly = random_convex_polygon(Domain{unit_square()}, rng);
    double R = inradius_highridge(poly).inradius;
    double d1 = 0.6 * R;
    double d0 = 0.25 * R;
    ConvexPolygon deep = erode(poly, d1);
    ConvexPolygon shallow = erode(poly, d0);
    BBox bb = poly.bounding_box();
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        Vec2 p{rng.uniform(bb.lo.x, bb.hi.x), rng.uniform(bb.lo.y, bb.hi.y)};
        bool lhs = deep.contains(p) && depth_inside(poly, p) > d1;
        bool rhs = shallow.contains(p) && depth_inside(shallow, p) > d1 - d0;
        if (std::abs(depth_inside(poly, p) - d1) < 1e-9) continue; // boundary band
        CHECK(lhs == rhs);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("distance to the eroded body is continuous in depth") {
    Rng rng(19);
    ConvexPolygon poly = unit_square();
    double R = 0.5;
    for (int i = 0; i < 300; ++i) {
        Vec2 p = testsupport::random_point_in(poly, rng);
        double d1 = rng.uniform(0.0, 0.95 * R);
        double d0 = rng.uniform(0.0, d1);
        ConvexPolygon e1 = erode(poly, d1);
        ConvexPolygon e0 = erode(poly, d0);
        double k_min = 1.0;
        for (const auto& f : vertex_fans(e1)) k_min = std::min(k_min, k_boundary(f));
        double bound = (d1 - d0) / std::sqrt(k_min) + 1e-9;
        CHECK(std::abs(dist_project(p, e1).d - dist_project(p, e0).d) <= bound);
    }
}

TEST_CASE("edges die cleanly during deep erosion") {
    // unit square with a corner chamfer; the chamfer edge goes redundant at
    // depth (1 - sqrt(2) * 0.95 / ...) ~ 0.0854
    ConvexPolygon poly({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.45}, {0.45, 0.5}, {-0.5, 0.5}});
    CHECK(erode(poly, 0.05).size() == 5);
    ConvexPolygon merged = erode(poly, 0.12);
    CHECK(merged.size() == 4);
    double total = 0.0;
    for (const auto& f : vertex_fans(merged)) total += 2.0 * f.half_angle;
    CHECK(total == Approx(2.0 * kPi).margin(1e-12));

    // past the death depth the erosion agrees with the plain square's, so the
    // Cheeger constants coincide
    CheegerResult chamfered = solve_cheeger(Domain{poly});
    CheegerResult plain = solve_cheeger(Domain{unit_square()});
    CHECK(chamfered.h == Approx(plain.h).margin(1e-10));
}

TEST_CASE("convex hull builds strictly convex polygons") {
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        ConvexPolygon poly = random_convex_polygon(Domain{unit_square()}, rng);
        CHECK(poly.size() >= 3);
        CHECK(poly.area() > 0.0);
    }
}
