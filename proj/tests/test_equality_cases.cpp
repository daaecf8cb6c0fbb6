#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "ehz/capacity.hpp"
#include "ehz/equality_cases.hpp"
#include "ehz/symplecto.hpp"
#include "test_util.hpp"

using namespace ehz;
using namespace ehz::testutil;

namespace {
const double kSqrt3 = std::sqrt(3.0);

Vec2 random_point_in_triangle(std::mt19937_64& rng, const ConvexPolygon& tri) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double w1 = uni(rng), w2 = uni(rng), w3 = uni(rng);
    const double tot = w1 + w2 + w3;
    return (w1 / tot) * tri[0] + (w2 / tot) * tri[1] + (w3 / tot) * tri[2];
}
}  // namespace

TEST_CASE("diamond basic forms") {
    const ConvexPolygon d55 = diamond(0.5, 0.5);
    CHECK(d55.size() == 4);
    CHECK(d55.area() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(same_cyclic(d55, ConvexPolygon({{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}}), 1e-12));

    const ConvexPolygon tri = diamond(0.0, 0.5);
    CHECK(tri.size() == 3);
    CHECK(same_cyclic(tri, ConvexPolygon({{0, 0}, {1, 0.5}, {0, 1}}), 1e-12));

    CHECK(diamond(0.5, 0.25).area() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(diamond(-0.1, 0.5), Error);
    CHECK_THROWS_AS(diamond(0.5, 1.2), Error);
}

TEST_CASE("t_star classifies hexagons and parallelograms and doubles the area") {
    const ConvexPolygon tri({{-0.5, -0.5 / kSqrt3}, {0.5, -0.5 / kSqrt3}, {0.0, 1.0 / kSqrt3}});

    const TStarSpec hex = t_star(tri, {0.0, 0.0});
    CHECK(hex.kind == TStarKind::Hexagon);
    CHECK(hex.hull.size() == 6);
    CHECK(hex.hull.area() == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-12));

    const Vec2 corner = -apply_J(tri[0]);
    const TStarSpec par = t_star(tri, corner);
    CHECK(par.kind == TStarKind::Parallelogram);
    CHECK(par.hull.size() == 4);
    CHECK(par.hull.area() == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(t_star(tri, {10.0, 10.0}), Error);
}

TEST_CASE("t_star area identity over random triangles") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const ConvexPolygon tri = random_triangle(rng, 0.1);
        const ConvexPolygon cen = tri.translated(-tri.centroid());
        const ConvexPolygon mjd = rotate_J(cen).point_reflected();
        const Vec2 t = random_point_in_triangle(rng, mjd);
        const TStarSpec star = t_star(tri, t);
        CHECK(std::abs(star.hull.area() - 2.0 * cen.area()) <= 1e-9);
    }
}

TEST_CASE("quadrilateral_from_params round trips and stretches") {
    QuadParams id;
    id.a1 = 0.4;
    id.a2 = 0.7;
    id.c1 = 0.4;
    id.c2 = 0.7;
    CHECK(same_cyclic(quadrilateral_from_params(id), diamond(0.4, 0.7), 1e-12));

    QuadParams st;
    st.a1 = st.a2 = 0.5;
    st.d1 = 2.0;
    st.c1 = st.c2 = 0.5;
    const ConvexPolygon q = quadrilateral_from_params(st);
    CHECK(same_cyclic(q, ConvexPolygon({{0.5, 0}, {1.5, 0.5}, {0.5, 1}, {-0.5, 0.5}}), 1e-12));

    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        QuadParams p;
        p.alpha = 1.2 * (uni(rng) - 0.5);
        p.beta = 6.28 * uni(rng);
        p.a1 = 0.1 + 0.8 * uni(rng);
        p.a2 = 0.1 + 0.8 * uni(rng);
        p.d1 = 0.5 + 1.5 * uni(rng);
        p.d2 = 0.5 + 1.5 * uni(rng);
        p.c1 = 2.0 * (uni(rng) - 0.5);
        p.c2 = 2.0 * (uni(rng) - 0.5);
        const ConvexPolygon Q = quadrilateral_from_params(p);
        CHECK(Q.area() == doctest::Approx(p.d1 * p.d2 * 0.5).epsilon(1e-12));
        // Inverse map chain returns the diamond.
        const AffineMap2 inv = quad_forward_map(p).inverse();
        const ConvexPolygon back = apply_map(inv, Q);
        CHECK(same_cyclic(back, diamond(p.a1, p.a2), 1e-10));
    }
}

TEST_CASE("splitting triangles of the reference diamond") {
    const SplittingTriangles st = splitting_triangles(0.5, 0.25);
    CHECK(dist(st.v2, {1.5, -0.5}) <= 1e-12);
    CHECK(dist(st.v1, {-0.5, -0.5}) <= 1e-12);
    CHECK(st.lambda1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(st.lambda2 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(same_cyclic(st.delta2,
                      ConvexPolygon({{0.5, 1.0}, {0.0, 0.25}, {1.5, -0.5}}), 1e-12));

    CHECK_THROWS_AS(splitting_triangles(0.3, 0.3), Error);
    CHECK_THROWS_AS(splitting_triangles(0.3, 0.7), Error);
    CHECK_THROWS_AS(splitting_triangles(0.0, 0.4), Error);
}

TEST_CASE("splitting triangles over random parameters") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    int done = 0;
    while (done < 100) {
        const double a1 = uni(rng), a2 = uni(rng);
        if (std::abs(a1 - a2) < 1e-3 || std::abs(a1 + a2 - 1.0) < 1e-3) continue;
        ++done;
        const SplittingTriangles st = splitting_triangles(a1, a2);
        // The intersection reproduces the diamond.
        const auto inter = intersect_pair(st.delta1, st.delta2);
        REQUIRE(inter.has_value());
        CHECK(same_cyclic(*inter, diamond(a1, a2), 1e-9));
        // Apexes on the extended square diagonals.
        CHECK(std::abs(st.v2.y - (1.0 - st.v2.x)) <= 1e-12);
        CHECK(std::abs(st.v1.y - st.v1.x) <= 1e-12);
        CHECK(st.lambda1 > 0.0);
        CHECK(st.lambda2 > 0.0);
        // The closed forms hold verbatim on their parameter quadrant.
        if (a2 < a1 && a1 < 1.0 - a2) {
            CHECK(st.lambda1 ==
                  doctest::Approx((1.0 - a2 - a1) / ((1.0 - a2) * (1.0 - a1))).epsilon(1e-12));
            CHECK(st.lambda2 == doctest::Approx((a1 - a2) / (a1 * (1.0 - a2))).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaled J copies of the splitting triangles sit on the unit square boundary") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    int done = 0;
    while (done < 40) {
        const double a1 = uni(rng), a2 = uni(rng);
        if (std::abs(a1 - a2) < 1e-3 || std::abs(a1 + a2 - 1.0) < 1e-3) continue;
        ++done;
        const SplittingTriangles st = splitting_triangles(a1, a2);
        const ConvexPolygon square01 = unit_square();
        for (const auto& [tri, lambda, apex] :
             {std::tuple{st.delta1, st.lambda1, st.v1}, std::tuple{st.delta2, st.lambda2, st.v2}}) {
            const ConvexPolygon img = rotate_J(tri).scaled(lambda);
            double min_x = 1e30, min_y = 1e30, max_x = -1e30, max_y = -1e30;
            for (const Vec2& v : img.vertices()) {
                min_x = std::min(min_x, v.x);
                min_y = std::min(min_y, v.y);
                max_x = std::max(max_x, v.x);
                max_y = std::max(max_y, v.y);
            }
            CHECK(max_x - min_x == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(max_y - min_y == doctest::Approx(1.0).epsilon(1e-9));
            const Vec2 shift{-min_x, -min_y};
            for (const Vec2& v : img.vertices()) {
                CHECK(square01.distance_to_boundary(v + shift) <= 1e-9);
            }
            // The apex image lands on a corner of the unit square.
            const Vec2 a = lambda * apply_J(apex) + shift;
            const double corner_dist =
                std::min(std::min(dist(a, {0, 0}), dist(a, {1, 0})),
                         std::min(dist(a, {1, 1}), dist(a, {0, 1})));
            CHECK(corner_dist <= 1e-9);
        }
    }
}

TEST_CASE("trapezoid cover triangle") {
    const TrapezoidCover tc = trapezoid_cover_triangle(0.25, 0.25);
    CHECK(tc.lambda == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(dist(tc.apex, {-0.125, -0.125}) <= 1e-12);
    // The cover contains the diamond.
    const ConvexPolygon dia25 = diamond(0.25, 0.25);
    for (const Vec2& v : dia25.vertices()) CHECK(tc.cover.contains(v, 1e-9));
    CHECK(tc.cover.area() >= dia25.area());
    // The diagonal is orthogonal to the parallel diamond edges (slope -1).
    CHECK(tc.diagonal.degenerate());
    CHECK(std::abs(cross(tc.diagonal[1] - tc.diagonal[0], {1.0, 1.0})) <= 1e-12);

    const TrapezoidCover anti = trapezoid_cover_triangle(0.75, 0.25);
    CHECK(std::abs(cross(anti.diagonal[1] - anti.diagonal[0], {1.0, -1.0})) <= 1e-12);

    CHECK_THROWS_AS(trapezoid_cover_triangle(0.5, 0.5), Error);
    CHECK_THROWS_AS(trapezoid_cover_triangle(0.3, 0.4), Error);
}

TEST_CASE("cover triangle copies fit the unit square like the splitting ones") {
    for (double a : {0.2, 0.25, 0.4, 0.65, 0.8}) {
        for (bool anti : {false, true}) {
            const double a1 = anti ? 1.0 - a : a;
            if (std::abs(a1 - 0.5) < 1e-9 && std::abs(a - 0.5) < 1e-9) continue;
            const TrapezoidCover tc = trapezoid_cover_triangle(a1, a);
            const ConvexPolygon img = rotate_J(tc.cover).scaled(tc.lambda);
            double min_x = 1e30, min_y = 1e30, max_x = -1e30, max_y = -1e30;
            for (const Vec2& v : img.vertices()) {
                min_x = std::min(min_x, v.x);
                min_y = std::min(min_y, v.y);
                max_x = std::max(max_x, v.x);
                max_y = std::max(max_y, v.y);
            }
            CHECK(max_x - min_x == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(max_y - min_y == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("equality partner shapes") {
    QuadParams id;
    CHECK(same_cyclic(equality_partner(id), unit_square(), 1e-12));

    QuadParams p;
    p.d1 = 2.0;
    CHECK(same_cyclic(equality_partner(p),
                      ConvexPolygon({{0, 0}, {0.5, 0}, {0.5, 1}, {0, 1}}), 1e-12));
}

TEST_CASE("Q x partner is an equality case") {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
        QuadParams p;
        p.alpha = 0.8 * (uni(rng) - 0.5);
        p.beta = 6.28 * uni(rng);
        p.a1 = 0.15 + 0.7 * uni(rng);
        p.a2 = 0.15 + 0.7 * uni(rng);
        p.d1 = 0.6 + uni(rng);
        p.d2 = 0.6 + uni(rng);
        const ConvexPolygon Q = quadrilateral_from_params(p);
        const ConvexPolygon P = equality_partner(p);
        CHECK(Q.area() * P.area() == doctest::Approx(0.5).epsilon(1e-12));
        const SystolicReport rep = systolic_report(Q, P, 240);
        CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-3));
    }
}
