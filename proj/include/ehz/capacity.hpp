#pragma once

#include <string>

#include "ehz/geom2d.hpp"

namespace ehz {

enum class Solver { TwoBounceExact, ThreeBounceOracle, Combined };

struct CapacityResult {
    double value = 0.0;
    ClosedPolygonalCurve optimizer_curve;
    Solver solver = Solver::TwoBounceExact;
    double dual_value = 0.0;
    int grid_resolution = 0;
};

struct SystolicReport {
    double capacity = 0.0;
    double volume_product = 0.0;
    double ratio = 0.0;
    bool is_equality = false;
};

inline const char* solver_name(Solver s) {
    switch (s) {
        case Solver::TwoBounceExact: return "TwoBounceExact";
        case Solver::ThreeBounceOracle: return "ThreeBounceOracle";
        case Solver::Combined: return "Combined";
    }
    return "Unknown";
}

// l_T-length of a closed polygonal cycle: sum of support values of the edge
// vectors. Translation invariant in both the curve and T.
double ell_length(const ClosedPolygonalCurve& q, const ConvexPolygon& T);
double ell_length(const std::vector<Vec2>& cycle, const ConvexPolygon& T);

// Exact minimum over 2-vertex curves that cannot be translated into the
// interior of K: min over directions of chord_K(u) * (h_T(u) + h_T(-u)).
// Angular grid of 3600 samples plus all edge-normal/edge-direction
// breakpoints of K and T, golden-section refined around the best 5 cells.
CapacityResult capacity_two_bounce(const ConvexPolygon& K, const ConvexPolygon& T);

// Grid search over boundary triples of K (arc-length grid of about
// `resolution` points containing every vertex of K), filtered to triples
// whose normal cones positively span the plane and which fail
// fits_by_translation, then coordinate-descent refinement keeping
// feasibility. Upper bound converging to the 3-bounce minimum.
CapacityResult capacity_three_bounce_oracle(const ConvexPolygon& K, const ConvexPolygon& T,
                                            int resolution);

inline constexpr int kDefaultOracleResolution = 720;

// min(capacity_two_bounce, capacity_three_bounce_oracle); dual_value is the
// same minimum with the roles of K and T swapped.
CapacityResult ehz_capacity(const ConvexPolygon& K, const ConvexPolygon& T,
                            int resolution = kDefaultOracleResolution);

SystolicReport systolic_report(const ConvexPolygon& K, const ConvexPolygon& T,
                               int resolution = kDefaultOracleResolution);
SystolicReport systolic_report_from_value(double capacity, const ConvexPolygon& K,
                                          const ConvexPolygon& T);

// Capacity-side form of the sharp billiard/worm inequality for trapezoids:
// after normalizing vol(Q) to 1, checks capacity(K,Q)^2 <= 2 vol(K)(1+1e-3).
// Q must be a trapezoid (a quadrilateral with a parallel edge pair within
// angular tolerance 1e-9, or a triangle as a degenerate trapezoid).
bool worm_inequality_check(const ConvexPolygon& K, const ConvexPolygon& Q,
                           int resolution = kDefaultOracleResolution);

bool is_trapezoid(const ConvexPolygon& Q, double angular_tol = 1e-9);

}  // namespace ehz
