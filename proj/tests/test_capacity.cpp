#include <doctest.h>

#include <cmath>
#include <random>

#include "ehz/capacity.hpp"
#include "ehz/equality_cases.hpp"
#include "ehz/symplecto.hpp"
#include "test_util.hpp"

using namespace ehz;
using namespace ehz::testutil;

TEST_CASE("ell_length reproduces the two published trajectory lengths") {
    const ConvexPolygon hex({{-0.5, -1}, {0.5, -1}, {1.5, 0}, {0.5, 1}, {-0.5, 1}, {-1.5, 0}});
    const ClosedPolygonalCurve q1({{1, -1}, {-1, -1}});
    CHECK(ell_length(q1, hex) == doctest::Approx(6.0).epsilon(1e-15));

    const ConvexPolygon dia = diamond(0.5, 0.25);
    const ClosedPolygonalCurve q2({{1, -1}, {-1, 1}});
    CHECK(ell_length(q2, dia) == doctest::Approx(2.5).epsilon(1e-15));

    const ClosedPolygonalCurve q2_shift({{1 + 7.0, -1 - 3.0}, {-1 + 7.0, 1 - 3.0}});
    CHECK(ell_length(q2_shift, dia) == ell_length(q2, dia));
}

TEST_CASE("ell_length is invariant under translating T") {
    std::mt19937_64 rng(21);
    const ConvexPolygon T = random_convex_polygon(rng, 8);
    const ClosedPolygonalCurve q({{0, 0}, {1.2, 0.1}, {0.3, 0.9}});
    const double base = ell_length(q, T);
    CHECK(ell_length(q, T.translated({3.7, -2.2})) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("two-bounce capacity of square x diamond is the side length") {
    for (double a : {1.0, 2.0}) {
        for (double a1 : {0.0, 0.3, 0.5, 1.0}) {
            for (double a2 : {0.25, 0.75}) {
                const CapacityResult r = capacity_two_bounce(square(a), diamond(a1, a2));
                CHECK(std::abs(r.value - a) <= 1e-9);
            }
        }
    }
}

TEST_CASE("two-bounce capacity of Delta x J Delta is twice the area") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 10; ++i) {
        const ConvexPolygon tri = random_triangle(rng);
        const CapacityResult r = capacity_two_bounce(tri, rotate_J(tri));
        CHECK(r.value == doctest::Approx(2.0 * tri.area()).epsilon(1e-9));
    }
}

TEST_CASE("two-bounce capacity of the unit square against itself is 1") {
    const CapacityResult r = capacity_two_bounce(unit_square(), unit_square());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(fits_by_translation(r.optimizer_curve, unit_square()).fits);
}

TEST_CASE("three-bounce oracle finds vol(Delta) for Delta x J Delta") {
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    const CapacityResult r = capacity_three_bounce_oracle(tri, rotate_J(tri), 240);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-3));
    CHECK_FALSE(fits_by_translation(r.optimizer_curve, tri).fits);
}

TEST_CASE("three-bounce oracle never beats the square-diamond two-bounce value") {
    const CapacityResult two = capacity_two_bounce(unit_square(), diamond(0.5, 0.5));
    const CapacityResult three = capacity_three_bounce_oracle(unit_square(), diamond(0.5, 0.5), 240);
    CHECK(three.value >= two.value - 1e-9);
}

TEST_CASE("ehz_capacity on the catalog products") {
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    const CapacityResult rt = ehz_capacity(tri, rotate_J(tri), 240);
    CHECK(rt.value == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(std::abs(rt.value - rt.dual_value) <= 1e-3 * rt.value);

    const ConvexPolygon sq2({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    const CapacityResult rs = ehz_capacity(sq2, diamond(0.5, 0.25), 240);
    CHECK(std::abs(rs.value - 2.0) <= 1e-9);
}

TEST_CASE("capacity is symmetric in the two factors") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 3; ++i) {
        const ConvexPolygon K = random_convex_polygon(rng, 6);
        const ConvexPolygon T = random_convex_polygon(rng, 6);
        const CapacityResult a = ehz_capacity(K, T, 240);
        const CapacityResult b = ehz_capacity(T, K, 240);
        CHECK(std::abs(a.value - b.value) <= 1e-3 * a.value);
    }
}

TEST_CASE("capacity scales linearly in each factor") {
    std::mt19937_64 rng(24);
    const ConvexPolygon K = random_convex_polygon(rng, 6);
    const ConvexPolygon T = random_convex_polygon(rng, 6);
    const double base = ehz_capacity(K, T, 240).value;
    CHECK(ehz_capacity(K.scaled(2.0), T, 240).value == doctest::Approx(2.0 * base).epsilon(2e-3));
    CHECK(ehz_capacity(K, T.scaled(0.5), 240).value == doctest::Approx(0.5 * base).epsilon(2e-3));
}

TEST_CASE("capacity is monotone in T") {
    std::mt19937_64 rng(25);
    const ConvexPolygon K = random_convex_polygon(rng, 6);
    const ConvexPolygon T2 = random_convex_polygon(rng, 6);
    const ConvexPolygon T1 = T2.translated(-T2.centroid()).scaled(0.7).translated(T2.centroid());
    const double v1 = ehz_capacity(K, T1, 240).value;
    const double v2 = ehz_capacity(K, T2, 240).value;
    CHECK(v1 <= v2 + 1e-9);
}

TEST_CASE("systolic report flags the square-diamond equality case") {
    const SystolicReport rep = systolic_report(unit_square(), diamond(0.3, 0.8), 240);
    CHECK(rep.volume_product == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.is_equality);
}

TEST_CASE("systolic ratio is below 1 for a disk-like T") {
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    // 64-gon normalized to area 2 vol(Delta) = 1.
    ConvexPolygon disk = regular_ngon(64, 1.0);
    disk = disk.scaled(std::sqrt(1.0 / disk.area()));
    const SystolicReport rep = systolic_report(tri, disk, 240);
    CHECK(rep.ratio < 1.0 - 1e-3);
}

TEST_CASE("worm inequality check") {
    CHECK(worm_inequality_check(unit_square(), diamond(0.5, 0.5), 240));

    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    const ConvexPolygon tri2({{0, 0}, {1.5, 0.2}, {0.4, 1.1}});
    CHECK(worm_inequality_check(tri, tri2, 240));  // triangles are degenerate trapezoids

    CHECK(worm_inequality_check(tri.scaled(2.0), diamond(0.5, 0.5), 240));

    const ConvexPolygon pent = regular_ngon(5, 1.0);
    CHECK_THROWS_AS(worm_inequality_check(unit_square(), pent, 240), Error);

    const ConvexPolygon skew({{0, 0}, {1, 0}, {1.4, 1.1}, {0.1, 0.9}});
    CHECK_FALSE(is_trapezoid(skew));
    const ConvexPolygon trap({{0, 0}, {2, 0}, {1.5, 1}, {0.5, 1}});
    CHECK(is_trapezoid(trap));
}

TEST_CASE("oracle requires a workable resolution") {
    const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(capacity_three_bounce_oracle(tri, tri, 10), Error);
}
