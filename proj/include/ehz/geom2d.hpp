#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ehz/error.hpp"
#include "ehz/vec2.hpp"

namespace ehz {

// Tolerances used across the geometry kernel. Predicates on constructed
// inputs use kTolPredicate; derived boundary membership uses kTolBoundary.
inline constexpr double kTolPredicate = 1e-12;
inline constexpr double kTolBoundary = 1e-9;

// Planar convex body given by counterclockwise vertices, no three
// consecutive collinear. A degenerate polygon is a segment (area 0); it is
// accepted only by area/support/convex_hull and the covering module.
class ConvexPolygon {
public:
    ConvexPolygon() = default;

    // Validates and normalizes: enforces CCW orientation, strips duplicate
    // and collinear vertices. Throws DegenerateInput on < 2 distinct points
    // or a non-convex chain.
    explicit ConvexPolygon(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const Vec2& operator[](std::size_t i) const { return verts_[i]; }

    bool degenerate() const { return degenerate_; }
    double area() const { return area_; }
    double perimeter() const { return perimeter_; }
    Vec2 centroid() const;
    double diameter() const;

    // Edge i runs from vertex i to vertex i+1 (mod size).
    Vec2 edge_vector(std::size_t i) const;
    Vec2 edge_normal(std::size_t i) const;  // unit outward normal
    double edge_length(std::size_t i) const;

    // Boundary parametrization: cumulative arc length from vertex 0, CCW.
    Vec2 boundary_point(double s) const;
    // Point plus the index of the edge containing it; at a vertex (within
    // kTolBoundary in arc length) reports the vertex index via *vertex.
    Vec2 boundary_point(double s, std::size_t* edge, int* vertex) const;
    double arc_of_vertex(std::size_t i) const;

    bool contains(Vec2 p, double tol = kTolBoundary) const;
    bool strictly_contains(Vec2 p, double margin) const;
    double distance_to_boundary(Vec2 p) const;

    ConvexPolygon translated(Vec2 t) const;
    ConvexPolygon scaled(double s) const;        // about the origin
    ConvexPolygon point_reflected() const;       // P -> -P

    // Throws DegenerateInput when the polygon is a segment.
    void require_nondegenerate(const char* op) const;

private:
    std::vector<Vec2> verts_;
    std::vector<double> cum_arc_;  // cum_arc_[i] = arc length up to vertex i
    bool degenerate_ = false;
    double area_ = 0.0;
    double perimeter_ = 0.0;

    friend ConvexPolygon convex_hull(const std::vector<Vec2>&);
};

// Cone with apex and two unit rays spanning CCW from ray_lo to ray_hi
// (angle in [0, pi]); equal rays encode a half-line cone.
struct Cone2 {
    Vec2 apex;
    Vec2 ray_lo;
    Vec2 ray_hi;
    bool is_ray() const { return dist(ray_lo, ray_hi) <= kTolPredicate; }
};

// Ordered cycle of 2 or 3 distinct points; candidate element of F2/F3.
struct ClosedPolygonalCurve {
    std::vector<Vec2> vertices;

    ClosedPolygonalCurve() = default;
    explicit ClosedPolygonalCurve(std::vector<Vec2> v);
};

ConvexPolygon convex_hull(const std::vector<Vec2>& points);

// Exact support function h_P(u) = max_v <u, v>; degenerate polygons allowed.
double support_function(const ConvexPolygon& P, Vec2 u);

// Minkowski functional; requires the origin strictly inside P (margin 1e-9).
double gauge(const ConvexPolygon& P, Vec2 x);

// Polar body {y : <x,y> <= 1 for all x in P}; requires origin interior.
ConvexPolygon polar(const ConvexPolygon& P);

// Applies J(x,y) = (y,-x) to every vertex.
ConvexPolygon rotate_J(const ConvexPolygon& P);

// Normal cone of P at a boundary point x (within 1e-9 of the boundary).
Cone2 normal_cone(const ConvexPolygon& P, Vec2 x);

// Maximal length of a chord of P parallel to u.
double chord_length(const ConvexPolygon& P, Vec2 u);
// Same, also reporting a realizing chord.
double chord_length(const ConvexPolygon& P, Vec2 u, Vec2* a, Vec2* b);

// Convex intersection; nullopt when empty. Result vertices are
// canonicalized (CCW, collinear stripped, lexicographically smallest first).
std::optional<ConvexPolygon> intersect_pair(const ConvexPolygon& P,
                                            const ConvexPolygon& Q);

struct FitResult {
    bool fits = false;
    Vec2 witness;  // valid only when fits
};

// True iff the curve can be translated into the open interior of K, i.e.
// the intersection of the translates K - q_j has area > 1e-12. The witness
// is an interior point of that intersection. q is in F(K) iff !fits.
FitResult fits_by_translation(const ClosedPolygonalCurve& q,
                              const ConvexPolygon& K,
                              double area_threshold = 1e-12);

// Area of the intersection of the translates K - q_j (0 when empty).
double translate_intersection_area(const std::vector<Vec2>& q,
                                   const ConvexPolygon& K,
                                   Vec2* witness = nullptr);

bool same_cyclic(const ConvexPolygon& P, const ConvexPolygon& Q, double tol);

}  // namespace ehz
