#pragma once

#include "ehz/geom2d.hpp"

namespace ehz {

// Diamond in basic form: conv{ {a1} x [0,1], [0,1] x {a2} }, area 1/2.
// Degenerates to a triangle when a1 or a2 is 0 or 1.
ConvexPolygon diamond(double a1, double a2);

// Scaled form conv{ [0,a] x {a2}, {a1} x [0,a] } with a1, a2 in [0, a].
ConvexPolygon diamond_scaled(double a, double a1, double a2);

enum class TStarKind { Hexagon, Parallelogram };

// Volume-minimizing convex hull conv{J Delta, -J Delta + t}, t in -J Delta,
// for a triangle normalized to centroid at the origin.
struct TStarSpec {
    ConvexPolygon base_triangle;  // centroid at origin
    Vec2 t;
    ConvexPolygon hull;
    TStarKind kind;
};

TStarSpec t_star(const ConvexPolygon& delta, Vec2 t);

// Convex quadrilateral Q_(alpha,beta,a1,a2,d1,d2,c1,c2): the image of
// diamond(a1,a2) under translate(-(a1,a2)), shear-scale, rotation by -beta,
// translate(+(c1,c2)).
struct QuadParams {
    double alpha = 0.0;  // shear angle, |alpha| < pi/2
    double beta = 0.0;   // rotation angle
    double a1 = 0.5;
    double a2 = 0.5;
    double d1 = 1.0;     // horizontal scaling, > 0
    double d2 = 1.0;     // vertical scaling, > 0
    double c1 = 0.0;
    double c2 = 0.0;
};

void validate(const QuadParams& p);

ConvexPolygon quadrilateral_from_params(const QuadParams& p);

// The two triangles whose intersection is diamond(a1,a2) when the diamond
// is not a trapezoid (a1 not in {a2, 1-a2}). v2 is the apex obtained by
// extending the lower-left and upper-right diamond edges; it lies on the
// square diagonal y = 1-x. v1, from the other edge pair, lies on y = x.
// lambda1/lambda2 scale J-rotated copies so they translate into the unit
// square with all vertices on its boundary and the apex at a corner.
struct SplittingTriangles {
    double a1 = 0.0;
    double a2 = 0.0;
    ConvexPolygon delta1;
    ConvexPolygon delta2;
    Vec2 v1;
    Vec2 v2;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

SplittingTriangles splitting_triangles(double a1, double a2);

// Trapezoid case a1 in {a2, 1-a2}, (a1,a2) != (1/2,1/2): the unique
// volume-minimizing triangle cover of the diamond, the scaling lambda from
// the extended-square construction, and the unit-square diagonal segment d
// orthogonal to the diamond's parallel sides.
struct TrapezoidCover {
    ConvexPolygon cover;
    double lambda = 0.0;
    ConvexPolygon diagonal;  // degenerate segment
    Vec2 apex;
};

TrapezoidCover trapezoid_cover_triangle(double a1, double a2);

// The parallelogram P = A square(1) with A = R_{-beta} (A_tilde^T)^{-1};
// Q x P is an equality case of the systolic inequality.
ConvexPolygon equality_partner(const QuadParams& p);

}  // namespace ehz
