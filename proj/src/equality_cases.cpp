#include "ehz/equality_cases.hpp"

#include <cmath>

#include "ehz/symplecto.hpp"

namespace ehz {
namespace {

void check_unit_range(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " must be in [0,1]");
}

// Intersection of the lines through (a,b) and (c,d); throws when parallel
// within 1e-12 (the trapezoid parameter lines are excluded upstream).
Vec2 line_intersection(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const Vec2 u = b - a;
    const Vec2 v = d - c;
    const double den = cross(u, v);
    if (std::abs(den) <= kTolPredicate * std::max(1.0, norm(u) * norm(v)))
        throw Error(ErrorKind::TrapezoidCase, "edge extensions are parallel");
    const double t = cross(c - a, v) / den;
    return a + t * u;
}

double lambda_from_apex(Vec2 v) {
    // Extended-square side through the apex on either square diagonal.
    return 1.0 / std::max(v.x, 1.0 - v.x);
}

}  // namespace

ConvexPolygon diamond(double a1, double a2) {
    check_unit_range(a1, "a1");
    check_unit_range(a2, "a2");
    return convex_hull({{a1, 0.0}, {1.0, a2}, {a1, 1.0}, {0.0, a2}});
}

ConvexPolygon diamond_scaled(double a, double a1, double a2) {
    if (!(a > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "a must be positive");
    if (!(a1 >= 0.0 && a1 <= a && a2 >= 0.0 && a2 <= a))
        throw Error(ErrorKind::ParamOutOfRange, "a1, a2 must be in [0, a]");
    return convex_hull({{a1, 0.0}, {a, a2}, {a1, a}, {0.0, a2}});
}

TStarSpec t_star(const ConvexPolygon& delta, Vec2 t) {
    delta.require_nondegenerate("t_star");
    if (delta.size() != 3) throw Error(ErrorKind::ParamOutOfRange, "t_star: delta must be a triangle");
    const ConvexPolygon centered = delta.translated(-delta.centroid());
    const ConvexPolygon jd = rotate_J(centered);
    const ConvexPolygon mjd = jd.point_reflected();
    if (!mjd.contains(t, kTolBoundary))
        throw Error(ErrorKind::TNotInMinusJDelta, "t is not in -J Delta");
    std::vector<Vec2> pts = jd.vertices();
    for (const Vec2& v : mjd.vertices()) pts.push_back(v + t);
    TStarSpec spec;
    spec.base_triangle = centered;
    spec.t = t;
    spec.hull = convex_hull(pts);
    spec.kind = mjd.distance_to_boundary(t) <= kTolBoundary ? TStarKind::Parallelogram
                                                            : TStarKind::Hexagon;
    if (std::abs(spec.hull.area() - 2.0 * centered.area()) > kTolBoundary)
        throw Error(ErrorKind::AssertionFailed, "t_star: hull area != 2 vol(Delta)");
    return spec;
}

void validate(const QuadParams& p) {
    check_unit_range(p.a1, "a1");
    check_unit_range(p.a2, "a2");
    if (!(p.d1 > 0.0 && p.d2 > 0.0))
        throw Error(ErrorKind::ParamOutOfRange, "d1, d2 must be positive");
    if (!(std::abs(p.alpha) < 1.5707963267948966))
        throw Error(ErrorKind::ParamOutOfRange, "|alpha| must be < pi/2");
}

ConvexPolygon quadrilateral_from_params(const QuadParams& p) {
    validate(p);
    return apply_map(quad_forward_map(p), diamond(p.a1, p.a2));
}

SplittingTriangles splitting_triangles(double a1, double a2) {
    if (!(a1 > 0.0 && a1 < 1.0 && a2 > 0.0 && a2 < 1.0))
        throw Error(ErrorKind::ParamOutOfRange, "a1, a2 must be in (0,1)");
    if (std::abs(a1 - a2) <= kTolPredicate || std::abs(a1 - (1.0 - a2)) <= kTolPredicate)
        throw Error(ErrorKind::TrapezoidCase, "a1 in {a2, 1-a2}: splitting not defined");

    const Vec2 p1{a1, 0.0}, p2{1.0, a2}, p3{a1, 1.0}, p4{0.0, a2};
    SplittingTriangles st;
    st.a1 = a1;
    st.a2 = a2;
    // v2: extensions of the lower-left (p4->p1) and upper-right (p2->p3)
    // edges; v1: extensions of the lower-right (p1->p2) and upper-left
    // (p3->p4) edges.
    st.v2 = line_intersection(p4, p1, p2, p3);
    st.v1 = line_intersection(p1, p2, p3, p4);
    st.delta2 = convex_hull({p1, p2, p3, p4, st.v2});
    st.delta1 = convex_hull({p1, p2, p3, p4, st.v1});
    st.lambda1 = lambda_from_apex(st.v1);
    st.lambda2 = lambda_from_apex(st.v2);
    return st;
}

TrapezoidCover trapezoid_cover_triangle(double a1, double a2) {
    if (!(a1 > 0.0 && a1 < 1.0 && a2 > 0.0 && a2 < 1.0))
        throw Error(ErrorKind::ParamOutOfRange, "a1, a2 must be in (0,1)");
    const bool diag_case = std::abs(a1 - a2) <= kTolPredicate;
    const bool anti_case = std::abs(a1 - (1.0 - a2)) <= kTolPredicate;
    if (!(diag_case || anti_case) || (diag_case && anti_case))
        throw Error(ErrorKind::NotTrapezoidParams,
                    "requires a1 in {a2, 1-a2} with (a1,a2) != (1/2,1/2)");

    const Vec2 p1{a1, 0.0}, p2{1.0, a2}, p3{a1, 1.0}, p4{0.0, a2};
    TrapezoidCover tc;
    if (diag_case) {
        // Parallel pair p2->p3 and p4->p1 (slope -1); extend the other two.
        tc.apex = line_intersection(p1, p2, p3, p4);
        tc.diagonal = convex_hull({{0.0, 0.0}, {1.0, 1.0}});
    } else {
        tc.apex = line_intersection(p4, p1, p2, p3);
        tc.diagonal = convex_hull({{0.0, 1.0}, {1.0, 0.0}});
    }
    tc.cover = convex_hull({p1, p2, p3, p4, tc.apex});
    tc.lambda = lambda_from_apex(tc.apex);
    return tc;
}

ConvexPolygon equality_partner(const QuadParams& p) {
    validate(p);
    const AffineMap2 A = quad_partner_map(p);
    std::vector<Vec2> verts;
    for (const Vec2& v :
         std::vector<Vec2>{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) {
        verts.push_back(A.apply(v));
    }
    return ConvexPolygon(std::move(verts));
}

}  // namespace ehz
