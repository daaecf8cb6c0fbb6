#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ehz/geom2d.hpp"

namespace ehz {

struct QuadParams;

// 2x2 matrix plus translation; apply(x) = m*x + shift.
struct AffineMap2 {
    std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};
    Vec2 shift{0.0, 0.0};

    Vec2 linear(Vec2 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }
    Vec2 apply(Vec2 v) const { return linear(v) + shift; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    AffineMap2 inverse() const;                 // throws SingularMatrix
    AffineMap2 transpose() const;
    static AffineMap2 linear_of(double a, double b, double c, double d) {
        return {{{{a, b}, {c, d}}}, {0.0, 0.0}};
    }
    static AffineMap2 translation(Vec2 t) { return {{{{1.0, 0.0}, {0.0, 1.0}}}, t}; }
    static AffineMap2 rotation(double angle);
    // g after f: (g*f)(x) = g(f(x)).
    static AffineMap2 compose(const AffineMap2& g, const AffineMap2& f);
};

ConvexPolygon apply_map(const AffineMap2& map, const ConvexPolygon& P);

// phi x (phi^T)^-1 acting on a Lagrangian product; per-factor translations
// are symplectic on their own, so the T factor takes an independent shift.
std::pair<ConvexPolygon, ConvexPolygon> product_transform(const AffineMap2& phi,
                                                          const ConvexPolygon& K,
                                                          const ConvexPolygon& T,
                                                          Vec2 t_shift = {0.0, 0.0});

// Checks phi^T J phi = det(phi) J entrywise within 1e-12 (true for every
// 2x2 matrix).
bool verify_det_identity(const AffineMap2& phi);

struct BallNormalForm {
    double a = 1.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double radius = 0.0;  // sqrt(a/pi)
    double volume = 0.0;  // a^2/2
};

BallNormalForm make_ball_normal_form(double a, double a1, double a2);

// The fixed reference triangle with centroid at the origin used by the
// triangle normal form: (-1/2,-1/(2sqrt3)), (1/2,-1/(2sqrt3)), (0,1/sqrt3).
ConvexPolygon standard_triangle();

// Per-edge linear map A_t and pre-translations of the triangle normal form:
// A_t(Delta_std + s1) = diamond_scaled(a, a1, a2) and
// (A_t^T)^{-1}(T*(t) + s2) = unit square, for t on -J boundary(Delta_std).
struct TriangleNormalForm {
    int edge = 0;  // 0: [v1,v2], 1: [v2,v3], 2: [v3,v1]
    AffineMap2 A;  // linear part only
    Vec2 s1;
    Vec2 s2;
    double a = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
};

TriangleNormalForm triangle_normal_form(Vec2 t);

// Largest vertex-mapping residual of both factor identities of a normal
// form at parameter t.
double triangle_normal_form_residual(const TriangleNormalForm& nf, Vec2 t);

// Map chains (applied first-to-last) sending Q to diamond(1,a1,a2) and
// A square(1) to square(1), together with the ball data.
struct QuadNormalForm {
    std::vector<AffineMap2> x_chain;
    std::vector<AffineMap2> y_chain;
    BallNormalForm ball;
};

QuadNormalForm quadrilateral_normal_form(const QuadParams& p);

Vec2 apply_chain(const std::vector<AffineMap2>& chain, Vec2 v);

// Forward map of the quadrilateral parametrization (diamond -> Q) and the
// partner map A = R_{-beta} (A_tilde^T)^{-1}.
AffineMap2 quad_forward_map(const QuadParams& p);
AffineMap2 quad_partner_map(const QuadParams& p);

}  // namespace ehz
