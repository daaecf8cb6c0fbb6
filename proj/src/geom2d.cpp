#include "ehz/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ehz {
namespace {

double polygon_area(const std::vector<Vec2>& v) {
    double twice = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(v[i], v[(i + 1) % n]);
    }
    return 0.5 * twice;
}

// Strips consecutive duplicates and collinear middle vertices of a closed
// CCW chain. Keeps extreme points only.
std::vector<Vec2> strip_redundant(std::vector<Vec2> v) {
    std::vector<Vec2> out;
    for (const Vec2& p : v) {
        if (out.empty() || dist(out.back(), p) > kTolPredicate) out.push_back(p);
    }
    while (out.size() >= 2 && dist(out.front(), out.back()) <= kTolPredicate) out.pop_back();
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
            const std::size_t n = out.size();
            const Vec2 a = out[(i + n - 1) % n], b = out[i], c = out[(i + 1) % n];
            if (cross(b - a, c - b) <= kTolPredicate * std::max(1.0, norm(b - a) * norm(c - b))) {
                out.erase(out.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 2) throw Error(ErrorKind::DegenerateInput, "polygon needs at least 2 vertices");
    if (polygon_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    std::vector<Vec2> v = strip_redundant(std::move(vertices));
    if (v.size() < 2) {
        // All points coincide, or a segment got collapsed to its endpoints.
        throw Error(ErrorKind::DegenerateInput, "fewer than 2 distinct vertices");
    }
    if (v.size() >= 3) {
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (cross(v[(i + 1) % n] - v[i], v[(i + 2) % n] - v[(i + 1) % n]) < -kTolBoundary)
                throw Error(ErrorKind::DegenerateInput, "vertex chain is not convex CCW");
        }
    }
    verts_ = std::move(v);
    degenerate_ = verts_.size() == 2;
    area_ = degenerate_ ? 0.0 : polygon_area(verts_);
    const std::size_t n = verts_.size();
    cum_arc_.resize(n + 1);
    cum_arc_[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) cum_arc_[i + 1] = cum_arc_[i] + dist(verts_[i], verts_[(i + 1) % n]);
    perimeter_ = cum_arc_[n];
}

void ConvexPolygon::require_nondegenerate(const char* op) const {
    if (degenerate_) throw Error(ErrorKind::DegenerateInput, std::string(op) + ": degenerate polygon");
}

Vec2 ConvexPolygon::centroid() const {
    if (degenerate_) return 0.5 * (verts_[0] + verts_[1]);
    double a6 = 0.0;
    Vec2 c{0.0, 0.0};
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = cross(verts_[i], verts_[(i + 1) % n]);
        c += w * (verts_[i] + verts_[(i + 1) % n]);
        a6 += w;
    }
    return c / (3.0 * a6);
}

double ConvexPolygon::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::size_t j = i + 1; j < verts_.size(); ++j)
            best = std::max(best, dist(verts_[i], verts_[j]));
    return best;
}

Vec2 ConvexPolygon::edge_vector(std::size_t i) const {
    return verts_[(i + 1) % verts_.size()] - verts_[i];
}

Vec2 ConvexPolygon::edge_normal(std::size_t i) const { return outward_normal(edge_vector(i)); }

double ConvexPolygon::edge_length(std::size_t i) const { return norm(edge_vector(i)); }

double ConvexPolygon::arc_of_vertex(std::size_t i) const { return cum_arc_[i]; }

Vec2 ConvexPolygon::boundary_point(double s) const {
    std::size_t edge;
    int vertex;
    return boundary_point(s, &edge, &vertex);
}

Vec2 ConvexPolygon::boundary_point(double s, std::size_t* edge, int* vertex) const {
    require_nondegenerate("boundary_point");
    const std::size_t n = verts_.size();
    s = std::fmod(s, perimeter_);
    if (s < 0.0) s += perimeter_;
    const auto it = std::upper_bound(cum_arc_.begin(), cum_arc_.end(), s);
    std::size_t e = static_cast<std::size_t>(std::max<long>(0, (it - cum_arc_.begin()) - 1));
    if (e >= n) e = n - 1;
    const double local = s - cum_arc_[e];
    *edge = e;
    *vertex = -1;
    if (local <= kTolBoundary) *vertex = static_cast<int>(e);
    else if (cum_arc_[e + 1] - s <= kTolBoundary) *vertex = static_cast<int>((e + 1) % n);
    return verts_[e] + (local / edge_length(e)) * edge_vector(e);
}

bool ConvexPolygon::contains(Vec2 p, double tol) const {
    if (degenerate_) return false;
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (dot(p - verts_[i], edge_normal(i)) > tol) return false;
    }
    return true;
}

bool ConvexPolygon::strictly_contains(Vec2 p, double margin) const {
    if (degenerate_) return false;
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (dot(p - verts_[i], edge_normal(i)) > -margin) return false;
    }
    return true;
}

double ConvexPolygon::distance_to_boundary(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = verts_[i];
        const Vec2 d = verts_[(i + 1) % n] - a;
        const double len2 = norm_sq(d);
        double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, dist(p, a + t * d));
    }
    return best;
}

ConvexPolygon ConvexPolygon::translated(Vec2 t) const {
    std::vector<Vec2> v = verts_;
    for (Vec2& p : v) p += t;
    ConvexPolygon out;
    out.verts_ = std::move(v);
    out.cum_arc_ = cum_arc_;
    out.degenerate_ = degenerate_;
    out.area_ = area_;
    out.perimeter_ = perimeter_;
    return out;
}

ConvexPolygon ConvexPolygon::scaled(double s) const {
    std::vector<Vec2> v = verts_;
    for (Vec2& p : v) p = s * p;
    if (s < 0.0) std::reverse(v.begin(), v.end());
    return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::point_reflected() const { return scaled(-1.0); }

ClosedPolygonalCurve::ClosedPolygonalCurve(std::vector<Vec2> v) : vertices(std::move(v)) {
    if (vertices.size() < 2 || vertices.size() > 3)
        throw Error(ErrorKind::DegenerateInput, "curve needs 2 or 3 vertices");
    if (vertices.size() == 2) {
        if (dist(vertices[0], vertices[1]) <= kTolPredicate)
            throw Error(ErrorKind::DegenerateInput, "curve vertices coincide");
    } else {
        for (int i = 0; i < 3; ++i) {
            const Vec2 a = vertices[(i + 2) % 3], b = vertices[i], c = vertices[(i + 1) % 3];
            const Vec2 d = c - a;
            const double len = norm(d);
            if (len <= kTolPredicate) throw Error(ErrorKind::DegenerateInput, "curve vertices coincide");
            const double off = std::abs(cross(b - a, d)) / len;
            const double t = dot(b - a, d) / (len * len);
            if (off <= kTolPredicate && t >= -kTolPredicate && t <= 1.0 + kTolPredicate)
                throw Error(ErrorKind::DegenerateInput, "curve vertex lies on opposite segment");
        }
    }
}

ConvexPolygon convex_hull(const std::vector<Vec2>& points) {
    std::vector<Vec2> pts = points;
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return dist(a, b) <= kTolPredicate; }),
              pts.end());
    if (pts.size() < 2) throw Error(ErrorKind::DegenerateInput, "convex_hull: fewer than 2 distinct points");
    // Andrew's monotone chain; strictly convex turns only.
    auto build = [&](bool lower) {
        std::vector<Vec2> chain;
        const auto sweep = [&](Vec2 p) {
            while (chain.size() >= 2 &&
                   cross(chain.back() - chain[chain.size() - 2], p - chain.back()) <= kTolPredicate)
                chain.pop_back();
            chain.push_back(p);
        };
        if (lower) for (auto it = pts.begin(); it != pts.end(); ++it) sweep(*it);
        else for (auto it = pts.rbegin(); it != pts.rend(); ++it) sweep(*it);
        return chain;
    };
    std::vector<Vec2> lower = build(true), upper = build(false);
    lower.pop_back();
    upper.pop_back();
    std::vector<Vec2> hull = std::move(lower);
    hull.insert(hull.end(), upper.begin(), upper.end());
    if (hull.size() < 2) hull = {pts.front(), pts.back()};
    ConvexPolygon out;
    if (hull.size() == 2) {
        out.verts_ = hull;
        out.degenerate_ = true;
        out.area_ = 0.0;
        out.cum_arc_ = {0.0, dist(hull[0], hull[1]), 2.0 * dist(hull[0], hull[1])};
        out.perimeter_ = out.cum_arc_[2];
        return out;
    }
    return ConvexPolygon(std::move(hull));
}

double support_function(const ConvexPolygon& P, Vec2 u) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : P.vertices()) best = std::max(best, dot(u, v));
    return best;
}

double gauge(const ConvexPolygon& P, Vec2 x) {
    P.require_nondegenerate("gauge");
    if (!P.strictly_contains({0.0, 0.0}, kTolBoundary))
        throw Error(ErrorKind::OriginNotInterior, "gauge: origin not strictly inside");
    double best = 0.0;
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 nrm = P.edge_normal(i);
        const double h = dot(nrm, P[i]);
        best = std::max(best, dot(x, nrm) / h);
    }
    return std::max(best, 0.0);
}

ConvexPolygon polar(const ConvexPolygon& P) {
    P.require_nondegenerate("polar");
    if (!P.strictly_contains({0.0, 0.0}, kTolBoundary))
        throw Error(ErrorKind::OriginNotInterior, "polar: origin not strictly inside");
    std::vector<Vec2> v;
    const std::size_t n = P.size();
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 nrm = P.edge_normal(i);
        const double h = dot(nrm, P[i]);
        v.push_back(nrm / h);
    }
    return ConvexPolygon(std::move(v));
}

ConvexPolygon rotate_J(const ConvexPolygon& P) {
    std::vector<Vec2> v;
    v.reserve(P.size());
    for (const Vec2& p : P.vertices()) v.push_back(apply_J(p));
    if (P.degenerate()) return convex_hull(v);
    return ConvexPolygon(std::move(v));
}

Cone2 normal_cone(const ConvexPolygon& P, Vec2 x) {
    P.require_nondegenerate("normal_cone");
    if (P.distance_to_boundary(x) > kTolBoundary)
        throw Error(ErrorKind::NotOnBoundary, "normal_cone: point not on boundary");
    const std::size_t n = P.size();
    // Vertex case first: within kTolBoundary of some vertex.
    for (std::size_t i = 0; i < n; ++i) {
        if (dist(x, P[i]) <= kTolBoundary) {
            return Cone2{P[i], P.edge_normal((i + n - 1) % n), P.edge_normal(i)};
        }
    }
    std::size_t best_edge = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = P[i];
        const Vec2 d = P.edge_vector(i);
        const double t = std::clamp(dot(x - a, d) / norm_sq(d), 0.0, 1.0);
        const double dd = dist(x, a + t * d);
        if (dd < best_d) {
            best_d = dd;
            best_edge = i;
        }
    }
    const Vec2 nrm = P.edge_normal(best_edge);
    return Cone2{x, nrm, nrm};
}

double chord_length(const ConvexPolygon& P, Vec2 u) { return chord_length(P, u, nullptr, nullptr); }

double chord_length(const ConvexPolygon& P, Vec2 u, Vec2* a, Vec2* b) {
    P.require_nondegenerate("chord_length");
    const Vec2 d = normalized(u);
    double best = 0.0;
    Vec2 best_a{}, best_b{};
    const std::size_t n = P.size();
    // The longest chord passes through a vertex: the section-length function
    // is concave piecewise linear in the offset with breakpoints at vertices.
    // Chords are measured by segment crossings, which stays stable when the
    // direction is within a few ulps of an edge direction.
    for (const Vec2& v : P.vertices()) {
        double t_min = 0.0, t_max = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            const Vec2 pa = P[e];
            const Vec2 pb = P[(e + 1) % n];
            const double sa = cross(d, pa - v);
            const double sb = cross(d, pb - v);
            const double scale = std::max(1.0, std::max(norm(pa - v), norm(pb - v)));
            const auto note = [&](Vec2 p) {
                const double t = dot(p - v, d);
                t_min = std::min(t_min, t);
                t_max = std::max(t_max, t);
            };
            if (std::abs(sa) <= kTolPredicate * scale && std::abs(sb) <= kTolPredicate * scale) {
                note(pa);
                note(pb);
            } else if ((sa <= 0.0) != (sb <= 0.0) || sa == 0.0 || sb == 0.0) {
                note(pa + (sa / (sa - sb)) * (pb - pa));
            }
        }
        const double len = t_max - t_min;
        if (len > best) {
            best = len;
            best_a = v + t_min * d;
            best_b = v + t_max * d;
        }
    }
    if (a) *a = best_a;
    if (b) *b = best_b;
    return best;
}

namespace {

// Sutherland-Hodgman clip of a convex subject by the half-plane
// <p, n> <= h. Points within kTolPredicate of the line are kept.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& subject, Vec2 n, double h) {
    std::vector<Vec2> out;
    const std::size_t m = subject.size();
    if (m == 0) return out;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 cur = subject[i];
        const Vec2 nxt = subject[(i + 1) % m];
        const double dc = dot(cur, n) - h;
        const double dn = dot(nxt, n) - h;
        const bool cin = dc <= kTolPredicate;
        const bool nin = dn <= kTolPredicate;
        if (cin) out.push_back(cur);
        if (cin != nin) {
            const double t = dc / (dc - dn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const ConvexPolygon& clip) {
    const std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !subject.empty(); ++i) {
        const Vec2 nrm = clip.edge_normal(i);
        subject = clip_halfplane(subject, nrm, dot(nrm, clip[i]));
    }
    return subject;
}

std::vector<Vec2> canonical_cycle(std::vector<Vec2> v) {
    if (v.empty()) return v;
    std::size_t lo = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].x < v[lo].x || (v[i].x == v[lo].x && v[i].y < v[lo].y)) lo = i;
    }
    std::rotate(v.begin(), v.begin() + static_cast<long>(lo), v.end());
    return v;
}

}  // namespace

std::optional<ConvexPolygon> intersect_pair(const ConvexPolygon& P, const ConvexPolygon& Q) {
    if (P.degenerate() || Q.degenerate())
        throw Error(ErrorKind::DegenerateInput, "intersect_pair: degenerate input");
    std::vector<Vec2> poly = clip_convex(P.vertices(), Q);
    poly = strip_redundant(std::move(poly));
    if (poly.size() < 2) return std::nullopt;
    if (std::abs(polygon_area(poly)) <= kTolPredicate && poly.size() < 3) return std::nullopt;
    return ConvexPolygon(canonical_cycle(std::move(poly)));
}

double translate_intersection_area(const std::vector<Vec2>& q, const ConvexPolygon& K, Vec2* witness) {
    // Allocation-free Sutherland-Hodgman fold over the translates K - q_j.
    // Each halfplane clip adds at most one vertex; 512 slots cover every use
    // here (up to 64-gons, two or three translates).
    constexpr std::size_t kCap = 512;
    Vec2 buf_a[kCap], buf_b[kCap];
    Vec2* cur = buf_a;
    Vec2* nxt = buf_b;
    std::size_t m = K.size();
    if (m + q.size() * K.size() >= kCap) {
        // Rare large case: fall back to the vector-based path.
        std::vector<Vec2> poly = K.translated(-q[0]).vertices();
        for (std::size_t j = 1; j < q.size() && !poly.empty(); ++j)
            poly = clip_convex(std::move(poly), K.translated(-q[j]));
        if (poly.size() < 3) return 0.0;
        const double a = std::abs(polygon_area(poly));
        if (witness && a > 0.0) {
            Vec2 c{0.0, 0.0};
            for (const Vec2& p : poly) c += p;
            *witness = c / static_cast<double>(poly.size());
        }
        return a;
    }
    for (std::size_t i = 0; i < m; ++i) cur[i] = K[i] - q[0];
    for (std::size_t j = 1; j < q.size() && m > 0; ++j) {
        for (std::size_t e = 0; e < K.size() && m > 0; ++e) {
            const Vec2 nrm = K.edge_normal(e);
            const double h = dot(nrm, K[e] - q[j]);
            std::size_t out = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const Vec2 a = cur[i];
                const Vec2 b = cur[(i + 1) % m];
                const double da = dot(a, nrm) - h;
                const double db = dot(b, nrm) - h;
                const bool ain = da <= kTolPredicate;
                if (ain) nxt[out++] = a;
                if (ain != (db <= kTolPredicate)) nxt[out++] = a + (da / (da - db)) * (b - a);
            }
            std::swap(cur, nxt);
            m = out;
        }
    }
    if (m < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < m; ++i) twice += cross(cur[i], cur[(i + 1) % m]);
    const double a = std::abs(0.5 * twice);
    if (witness && a > 0.0) {
        Vec2 c{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) c += cur[i];
        *witness = c / static_cast<double>(m);
    }
    return a;
}

FitResult fits_by_translation(const ClosedPolygonalCurve& q, const ConvexPolygon& K,
                              double area_threshold) {
    K.require_nondegenerate("fits_by_translation");
    Vec2 w;
    const double a = translate_intersection_area(q.vertices, K, &w);
    if (a > area_threshold) return {true, w};
    return {false, {0.0, 0.0}};
}

bool same_cyclic(const ConvexPolygon& P, const ConvexPolygon& Q, double tol) {
    if (P.size() != Q.size()) return false;
    const std::size_t n = P.size();
    for (std::size_t off = 0; off < n; ++off) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (dist(P[i], Q[(i + off) % n]) > tol) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace ehz
