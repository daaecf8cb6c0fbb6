#include <doctest.h>

#include <cmath>
#include <random>

#include "ehz/dynamics.hpp"
#include "ehz/equality_cases.hpp"
#include "ehz/symplecto.hpp"
#include "test_util.hpp"

using namespace ehz;
using namespace ehz::testutil;

namespace {

BilliardState state_at(const ConvexPolygon& K, const ConvexPolygon& T, Vec2 q, Vec2 p) {
    BilliardState s;
    s.q = q;
    s.p = p;
    s.regular = true;
    return s;
}

}  // namespace

TEST_CASE("reflect_step crosses the square along the diamond normal") {
    const ConvexPolygon sq = unit_square();
    const ConvexPolygon dia = diamond(0.5, 0.5);
    // p on the edge of the diamond whose outward normal is (1,1)/sqrt(2).
    const BilliardState s = state_at(sq, dia, {0.25, 0.0}, {0.75, 0.75});
    const BilliardState next = reflect_step(sq, dia, s);
    CHECK(dist(next.q, {1.0, 0.75}) <= 1e-12);
    CHECK(sq.distance_to_boundary(next.q) <= 1e-9);
    CHECK(dia.distance_to_boundary(next.p) <= 1e-9);
}

TEST_CASE("reflect_step rejects vertex states and exiting rays") {
    const ConvexPolygon sq = unit_square();
    const ConvexPolygon dia = diamond(0.5, 0.5);
    CHECK_THROWS_AS(reflect_step(sq, dia, state_at(sq, dia, {0.25, 0.0}, {0.5, 0.0})), Error);
    // p on the lower-right edge: its normal points out of K at the bottom edge.
    CHECK_THROWS_AS(reflect_step(sq, dia, state_at(sq, dia, {0.25, 0.0}, {0.75, 0.25})), Error);
}

TEST_CASE("square-diamond trajectories close after four bounces at the capacity length") {
    for (const auto& [a1, a2] : {std::pair{0.5, 0.5}, std::pair{0.5, 0.25}, std::pair{0.3, 0.6}}) {
        const ConvexPolygon sq = unit_square();
        const ConvexPolygon dia = diamond(a1, a2);
        int closed = 0, total = 0;
        for (const BilliardState& s : regular_starts(sq, dia, 60)) {
            BilliardTrajectory traj;
            try {
                traj = trace(sq, dia, s, 12);
            } catch (const Error&) {
                continue;  // a non-regular hit; not a regular trajectory
            }
            ++total;
            if (!traj.closed) continue;
            ++closed;
            CHECK(traj.bounce_count == 4);
            CHECK(traj.length_T == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(traj.length_K_dual == doctest::Approx(traj.length_T).epsilon(1e-9));
            const BilliardState& first = traj.states.front();
            const BilliardState& last = traj.states.back();
            CHECK(dist(first.q, last.q) + dist(first.p, last.p) <= 1e-10);
        }
        CHECK(total > 40);
        CHECK(closed == total);
    }
}

TEST_CASE("triangle-hexagon trajectories close after four bounces") {
    const ConvexPolygon tri = standard_triangle();
    const TStarSpec star = t_star(tri, {0.0, 0.0});
    int closed = 0, total = 0;
    for (const BilliardState& s : regular_starts(star.base_triangle, star.hull, 50)) {
        BilliardTrajectory traj;
        try {
            traj = trace(star.base_triangle, star.hull, s, 12);
        } catch (const Error&) {
            continue;
        }
        ++total;
        if (traj.closed) {
            ++closed;
            CHECK(traj.bounce_count == 4);
            CHECK(traj.length_T ==
                  doctest::Approx(2.0 * star.base_triangle.area()).epsilon(1e-9));
        }
    }
    CHECK(total > 30);
    CHECK(closed == total);
}

TEST_CASE("generic products do not close after four bounces") {
    std::mt19937_64 rng(51);
    const ConvexPolygon K = random_convex_polygon(rng, 5);
    const ConvexPolygon T = random_convex_polygon(rng, 5);
    int open_count = 0, total = 0;
    for (const BilliardState& s : regular_starts(K, T, 20)) {
        try {
            const BilliardTrajectory traj = trace(K, T, s, 5);
            ++total;
            if (!traj.closed || traj.bounce_count != 4) ++open_count;
        } catch (const Error&) {
        }
    }
    CHECK(total > 5);
    CHECK(open_count > total / 2);
}

TEST_CASE("algebraic return maps fix the start coordinate") {
    CHECK(algebraic_return_map(0.3, 0.6, ReturnMapPattern::Upper, 0.25) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(algebraic_return_map(0.7, 1.0, ReturnMapPattern::LowerRight, 0.5) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(algebraic_return_map(0.7, 1.0, ReturnMapPattern::LowerLeft, 0.5) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(algebraic_return_map(0.4, 0.55, ReturnMapPattern::MiddleLeft, 0.9) ==
          doctest::Approx(0.9).epsilon(1e-14));
    CHECK(algebraic_return_map(0.4, 0.55, ReturnMapPattern::MiddleRight, 0.9) ==
          doctest::Approx(0.9).epsilon(1e-14));

    CHECK_THROWS_AS(algebraic_return_map(0.3, 0.6, ReturnMapPattern::LowerRight, 0.5), Error);
    CHECK_THROWS_AS(algebraic_return_map(1.3, 0.6, ReturnMapPattern::Upper, 0.5), Error);
}

TEST_CASE("return map residual over a parameter grid") {
    for (int ia = 0; ia < 12; ++ia) {
        for (int ib = 0; ib < 12; ++ib) {
            for (int iz = 0; iz < 12; ++iz) {
                const double a1 = (ia + 0.5) / 12.0;
                const double a2 = (ib + 0.5) / 12.0;
                const double z1 = (iz + 0.5) / 12.0;
                for (ReturnMapPattern pat : {ReturnMapPattern::Upper, ReturnMapPattern::MiddleLeft,
                                             ReturnMapPattern::MiddleRight}) {
                    CHECK(std::abs(algebraic_return_map(a1, a2, pat, z1) - z1) <= 1e-12);
                }
                for (ReturnMapPattern pat :
                     {ReturnMapPattern::LowerLeft, ReturnMapPattern::LowerRight}) {
                    CHECK(std::abs(algebraic_return_map(a1, 1.0, pat, z1) - z1) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("dual return map keeps the first coordinate") {
    CHECK(dual_return_map(0.5, 0.5, 0.2).x == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(dual_return_map(0.7, 0.3, 0.6).x == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS(dual_return_map(0.5, 0.5, 0.7), Error);  // z1 must be < a1
    for (int ia = 1; ia < 10; ++ia) {
        for (int ib = 1; ib < 10; ++ib) {
            for (int iz = 0; iz < 10; ++iz) {
                const double a1 = ia / 10.0;
                const double a2 = ib / 10.0;
                const double z1 = a1 * (iz + 0.5) / 10.0;
                CHECK(std::abs(dual_return_map(a1, a2, z1).x - z1) <= 1e-12);
            }
        }
    }
}

TEST_CASE("counterexample catalog reproduces the printed values") {
    const auto catalog = counterexample_catalog(240);
    REQUIRE(catalog.size() == 2);
    CHECK(catalog[0].ell_computed == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(catalog[0].capacity_computed == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(catalog[1].ell_computed == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(catalog[1].capacity_computed == doctest::Approx(2.0).epsilon(1e-3));
    for (const auto& inst : catalog) {
        CHECK_FALSE(fits_by_translation(inst.q, inst.K).fits);
    }
}

TEST_CASE("coverage grows with more starts") {
    const ConvexPolygon sq = unit_square();
    const ConvexPolygon dia = diamond(0.5, 0.5);
    const double one = coverage_sample(sq, dia, 1, 40);
    const double some = coverage_sample(sq, dia, 25, 40);
    const double many = coverage_sample(sq, dia, 50, 40);
    CHECK(one < some + 1e-12);
    CHECK(some <= many + 1e-12);
    CHECK(many >= 0.9);
}
