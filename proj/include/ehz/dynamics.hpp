#pragma once

#include <vector>

#include "ehz/capacity.hpp"
#include "ehz/geom2d.hpp"

namespace ehz {

struct BilliardState {
    Vec2 q;          // on boundary(K)
    Vec2 p;          // on boundary(T)
    double q_param = 0.0;
    double p_param = 0.0;
    bool regular = true;  // both points interior to edges (margin 1e-9)
};

BilliardState make_state(const ConvexPolygon& K, const ConvexPolygon& T, double q_param,
                         double p_param);

struct BilliardTrajectory {
    std::vector<BilliardState> states;
    bool closed = false;
    int bounce_count = 0;
    double length_T = 0.0;       // l_T of the q-cycle
    double length_K_dual = 0.0;  // l_{-K} of the p-cycle
};

// One generalized reflection: q' is the second intersection of the ray from
// q along the outward normal of T at p with boundary(K); p' is the next
// boundary point of T from p in direction -n_K(q'). Throws NonRegularState
// when p (or the new q') sits at a vertex, RayExitsImmediately when a ray
// leaves the body at its start.
BilliardState reflect_step(const ConvexPolygon& K, const ConvexPolygon& T,
                           const BilliardState& s);

// Iterates reflect_step until the state returns to a previous one within
// 1e-10 or max_steps is reached (then closed = false).
BilliardTrajectory trace(const ConvexPolygon& K, const ConvexPolygon& T,
                         const BilliardState& start, int max_steps);

enum class ReturnMapPattern { Upper, MiddleLeft, MiddleRight, LowerLeft, LowerRight };

// Composes the per-pattern line projections of the square-diamond return
// map on the start point (z1, 0) and returns the first coordinate of the
// image (the fixed-point identity gives z1 back).
double algebraic_return_map(double a1, double a2, ReturnMapPattern pattern, double z1);

// Dual return map on the diamond: evaluates the projections
// pi1^{g1} o pi2^{g4} o pi1^{g3} on (z1, g2(z1)); the first coordinate of
// the result equals z1.
Vec2 dual_return_map(double a1, double a2, double z1);

struct CounterexampleInstance {
    const char* name;
    ConvexPolygon K;
    ConvexPolygon T;
    ClosedPolygonalCurve q;
    std::vector<Vec2> p;
    double ell_printed = 0.0;
    double capacity_printed = 0.0;
    double ell_computed = 0.0;
    double capacity_computed = 0.0;
};

// The two closed non-regular trajectories whose l_T-length exceeds the
// capacity; recomputes both values and throws AssertionFailed if either
// deviates from the printed one.
std::vector<CounterexampleInstance> counterexample_catalog(
    int resolution = kDefaultOracleResolution);

// Fraction of raster cells of K within one cell diagonal of some traced
// trajectory path, from n_starts equispaced regular starts.
double coverage_sample(const ConvexPolygon& K, const ConvexPolygon& T, int n_starts, int grid);

// Equispaced regular starting states; each traced trajectory begins with an
// entering normal ray. Used by coverage_sample and the zoll workflows.
std::vector<BilliardState> regular_starts(const ConvexPolygon& K, const ConvexPolygon& T,
                                          int n_starts);

}  // namespace ehz
