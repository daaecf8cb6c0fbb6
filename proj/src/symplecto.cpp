#include "ehz/symplecto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ehz/equality_cases.hpp"

namespace ehz {
namespace {

const double kSqrt3 = std::sqrt(3.0);
constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

AffineMap2 AffineMap2::inverse() const {
    const double d = det();
    if (std::abs(d) <= kTolPredicate) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    AffineMap2 inv;
    inv.m = {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
    inv.shift = -inv.linear(shift);
    return inv;
}

AffineMap2 AffineMap2::transpose() const {
    AffineMap2 t;
    t.m = {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}};
    t.shift = {0.0, 0.0};
    return t;
}

AffineMap2 AffineMap2::rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return linear_of(c, -s, s, c);
}

AffineMap2 AffineMap2::compose(const AffineMap2& g, const AffineMap2& f) {
    AffineMap2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.m[i][j] = g.m[i][0] * f.m[0][j] + g.m[i][1] * f.m[1][j];
    out.shift = g.linear(f.shift) + g.shift;
    return out;
}

ConvexPolygon apply_map(const AffineMap2& map, const ConvexPolygon& P) {
    std::vector<Vec2> v;
    v.reserve(P.size());
    for (const Vec2& p : P.vertices()) v.push_back(map.apply(p));
    if (map.det() < 0.0) std::reverse(v.begin(), v.end());
    if (P.degenerate()) return convex_hull(v);
    return ConvexPolygon(std::move(v));
}

std::pair<ConvexPolygon, ConvexPolygon> product_transform(const AffineMap2& phi,
                                                          const ConvexPolygon& K,
                                                          const ConvexPolygon& T, Vec2 t_shift) {
    AffineMap2 dual = phi.transpose().inverse();
    dual.shift = t_shift;
    return {apply_map(phi, K), apply_map(dual, T)};
}

bool verify_det_identity(const AffineMap2& phi) {
    // J = [[0,1],[-1,0]], the matrix of J(x,y) = (y,-x).
    const double a = phi.m[0][0], b = phi.m[0][1], c = phi.m[1][0], d = phi.m[1][1];
    // phi^T J phi entries.
    const double e00 = a * (-c) + c * a;
    const double e01 = a * (-d) + c * b;
    const double e10 = b * (-c) + d * a;
    const double e11 = b * (-d) + d * b;
    const double det = phi.det();
    return std::abs(e00) <= 1e-12 && std::abs(e01 + det) <= 1e-12 &&
           std::abs(e10 - det) <= 1e-12 && std::abs(e11) <= 1e-12;
}

BallNormalForm make_ball_normal_form(double a, double a1, double a2) {
    if (!(a > 0.0) || a1 < 0.0 || a1 > a || a2 < 0.0 || a2 > a)
        throw Error(ErrorKind::ParamOutOfRange, "ball normal form needs a > 0, a1,a2 in [0,a]");
    BallNormalForm b;
    b.a = a;
    b.a1 = a1;
    b.a2 = a2;
    b.radius = std::sqrt(a / kPi);
    b.volume = a * a / 2.0;
    return b;
}

ConvexPolygon standard_triangle() {
    return ConvexPolygon({{-0.5, -0.5 / kSqrt3}, {0.5, -0.5 / kSqrt3}, {0.0, 1.0 / kSqrt3}});
}

namespace {

struct EdgeFrame {
    Vec2 a;
    Vec2 b;
};

std::array<EdgeFrame, 3> minus_j_edges() {
    const Vec2 v1{0.5 / kSqrt3, -0.5};
    const Vec2 v2{0.5 / kSqrt3, 0.5};
    const Vec2 v3{-1.0 / kSqrt3, 0.0};
    return {EdgeFrame{v1, v2}, EdgeFrame{v2, v3}, EdgeFrame{v3, v1}};
}

double seg_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double t = std::clamp(dot(p - a, d) / norm_sq(d), 0.0, 1.0);
    return dist(p, a + t * d);
}

}  // namespace

TriangleNormalForm triangle_normal_form(Vec2 t) {
    const auto edges = minus_j_edges();
    int edge = -1;
    for (int i = 0; i < 3; ++i) {
        if (seg_distance(t, edges[static_cast<std::size_t>(i)].a,
                         edges[static_cast<std::size_t>(i)].b) <= kTolBoundary) {
            edge = i;  // first (lexicographically smallest) edge wins at vertices
            break;
        }
    }
    if (edge < 0) throw Error(ErrorKind::TNotOnEdge, "t is not on -J boundary(Delta_std)");

    TriangleNormalForm nf;
    nf.edge = edge;
    nf.a = 0.5 * kSqrt3;
    const double t1 = t.x, t2 = t.y;
    switch (edge) {
        case 0:
            nf.A = AffineMap2::linear_of(0.5 * kSqrt3, t2, 0.0, 1.0);
            nf.s1 = {0.5, 0.5 / kSqrt3};
            nf.s2 = {0.5 / kSqrt3, 0.5};
            nf.a1 = kSqrt3 / 4.0 + 0.5 * kSqrt3 * t2;
            nf.a2 = 0.0;
            break;
        case 1:
            nf.A = AffineMap2::linear_of(0.5 * kSqrt3, 0.5, t1 - 0.5 / kSqrt3,
                                         t1 / kSqrt3 + 5.0 / 6.0);
            nf.s1 = {1.0 / 3.0 + t1 / kSqrt3, 1.0 / kSqrt3 - t1};
            nf.s2 = {0.5 / kSqrt3, 0.5};
            nf.a1 = 0.5 * kSqrt3;
            nf.a2 = 0.5 / kSqrt3 - t1;
            break;
        default:
            nf.A = AffineMap2::linear_of(-t1 + 0.5 / kSqrt3, 5.0 / 6.0 + t1 / kSqrt3,
                                         -0.5 * kSqrt3, 0.5);
            nf.s1 = {-1.0 / 3.0 - t1 / kSqrt3, 1.0 / kSqrt3 - t1};
            nf.s2 = {-t1 - 0.5 / kSqrt3, t1 / kSqrt3 + 5.0 / 6.0};
            nf.a1 = -t1 + 0.5 / kSqrt3;
            nf.a2 = 0.5 * kSqrt3;
            break;
    }
    return nf;
}

namespace {

// Largest distance from each vertex of P to the nearest vertex of Q.
double vertex_set_residual(const ConvexPolygon& P, const ConvexPolygon& Q) {
    double worst = 0.0;
    for (const Vec2& p : P.vertices()) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& q : Q.vertices()) best = std::min(best, dist(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double triangle_normal_form_residual(const TriangleNormalForm& nf, Vec2 t) {
    const ConvexPolygon delta = standard_triangle();
    const ConvexPolygon target_x = diamond_scaled(nf.a, nf.a1, nf.a2);
    ConvexPolygon image_x = apply_map(nf.A, delta.translated(nf.s1));
    double worst = std::max(vertex_set_residual(image_x, target_x),
                            vertex_set_residual(target_x, image_x));

    const TStarSpec star = t_star(delta, t);
    AffineMap2 dual = nf.A.transpose().inverse();
    const ConvexPolygon image_y = apply_map(dual, star.hull.translated(nf.s2));
    const ConvexPolygon square(
        {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    worst = std::max(worst, std::max(vertex_set_residual(image_y, square),
                                     vertex_set_residual(square, image_y)));
    return worst;
}

AffineMap2 quad_forward_map(const QuadParams& p) {
    const AffineMap2 shear_scale =
        AffineMap2::linear_of(p.d1, 0.0, p.d1 * std::tan(p.alpha), p.d2);
    const AffineMap2 rot = AffineMap2::rotation(-p.beta);
    AffineMap2 lin = AffineMap2::compose(rot, shear_scale);
    AffineMap2 out = AffineMap2::compose(lin, AffineMap2::translation({-p.a1, -p.a2}));
    return AffineMap2::compose(AffineMap2::translation({p.c1, p.c2}), out);
}

AffineMap2 quad_partner_map(const QuadParams& p) {
    const AffineMap2 shear_scale =
        AffineMap2::linear_of(p.d1, 0.0, p.d1 * std::tan(p.alpha), p.d2);
    return AffineMap2::compose(AffineMap2::rotation(-p.beta),
                               shear_scale.transpose().inverse());
}

Vec2 apply_chain(const std::vector<AffineMap2>& chain, Vec2 v) {
    for (const AffineMap2& m : chain) v = m.apply(v);
    return v;
}

QuadNormalForm quadrilateral_normal_form(const QuadParams& p) {
    validate(p);
    const AffineMap2 shear_scale =
        AffineMap2::linear_of(p.d1, 0.0, p.d1 * std::tan(p.alpha), p.d2);
    const AffineMap2 M = AffineMap2::compose(AffineMap2::rotation(-p.beta), shear_scale);

    QuadNormalForm nf;
    // Q -> diamond(1, a1, a2): undo translation, the linear part, and the
    // diagonal-intersection shift.
    nf.x_chain.push_back(AffineMap2::translation({-p.c1, -p.c2}));
    AffineMap2 minv = M.inverse();
    minv.shift = {0.0, 0.0};
    nf.x_chain.push_back(minv);
    nf.x_chain.push_back(AffineMap2::translation({p.a1, p.a2}));
    // A square(1) -> square(1): the dual factor is M^T.
    nf.y_chain.push_back(M.transpose());
    nf.ball = make_ball_normal_form(1.0, p.a1, p.a2);
    return nf;
}

}  // namespace ehz
