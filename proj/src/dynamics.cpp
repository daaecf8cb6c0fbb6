#include "ehz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ehz/equality_cases.hpp"

namespace ehz {
namespace {

constexpr double kClosureTol = 1e-10;

struct BoundaryLocation {
    std::size_t edge = 0;
    int vertex = -1;  // >= 0 when within kTolBoundary of that vertex
    double param = 0.0;
};

BoundaryLocation locate_on_boundary(const ConvexPolygon& P, Vec2 x) {
    if (P.distance_to_boundary(x) > kTolBoundary)
        throw Error(ErrorKind::NotOnBoundary, "point is not on the boundary");
    BoundaryLocation loc;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = P[i];
        const Vec2 d = P.edge_vector(i);
        const double t = std::clamp(dot(x - a, d) / norm_sq(d), 0.0, 1.0);
        const double dd = dist(x, a + t * d);
        if (dd < best) {
            best = dd;
            loc.edge = i;
            loc.param = P.arc_of_vertex(i) + t * P.edge_length(i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dist(x, P[i]) <= kTolBoundary) {
            loc.vertex = static_cast<int>(i);
            break;
        }
    }
    return loc;
}

// Second intersection of the ray {x + tau d : tau > 0} with boundary(P).
Vec2 ray_exit_point(const ConvexPolygon& P, Vec2 x, Vec2 d, const char* what) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 nrm = P.edge_normal(i);
        const double den = dot(d, nrm);
        const double num = dot(P[i] - x, nrm);
        if (std::abs(den) <= kTolPredicate) continue;
        if (den > 0.0) hi = std::min(hi, num / den);
        else lo = std::max(lo, num / den);
    }
    if (!(hi > kTolBoundary) || lo > hi)
        throw Error(ErrorKind::RayExitsImmediately, what);
    return x + hi * d;
}

}  // namespace

BilliardState make_state(const ConvexPolygon& K, const ConvexPolygon& T, double q_param,
                         double p_param) {
    BilliardState s;
    std::size_t edge;
    int vertex;
    s.q = K.boundary_point(q_param, &edge, &vertex);
    s.q_param = q_param;
    const bool q_reg = vertex < 0;
    s.p = T.boundary_point(p_param, &edge, &vertex);
    s.p_param = p_param;
    s.regular = q_reg && vertex < 0;
    return s;
}

BilliardState reflect_step(const ConvexPolygon& K, const ConvexPolygon& T,
                           const BilliardState& s) {
    K.require_nondegenerate("reflect_step");
    T.require_nondegenerate("reflect_step");
    const BoundaryLocation p_loc = locate_on_boundary(T, s.p);
    if (p_loc.vertex >= 0)
        throw Error(ErrorKind::NonRegularState, "p sits at a vertex of T");
    const Vec2 n_T = T.edge_normal(p_loc.edge);

    const BoundaryLocation q_loc = locate_on_boundary(K, s.q);
    if (q_loc.vertex >= 0)
        throw Error(ErrorKind::NonRegularState, "q sits at a vertex of K");
    if (dot(n_T, K.edge_normal(q_loc.edge)) >= -kTolPredicate)
        throw Error(ErrorKind::RayExitsImmediately, "normal of T at p points out of K at q");

    const Vec2 q_next = ray_exit_point(K, s.q, n_T, "ray leaves K at its start");
    const BoundaryLocation qn_loc = locate_on_boundary(K, q_next);
    if (qn_loc.vertex >= 0)
        throw Error(ErrorKind::NonRegularState, "new bounce point is a vertex of K");

    const Vec2 dir = -K.edge_normal(qn_loc.edge);
    if (dot(dir, n_T) >= -kTolPredicate)
        throw Error(ErrorKind::RayExitsImmediately, "dual direction points out of T at p");
    const Vec2 p_next = ray_exit_point(T, s.p, dir, "dual ray leaves T at its start");
    const BoundaryLocation pn_loc = locate_on_boundary(T, p_next);

    BilliardState out;
    out.q = q_next;
    out.p = p_next;
    out.q_param = qn_loc.param;
    out.p_param = pn_loc.param;
    out.regular = pn_loc.vertex < 0;
    return out;
}

BilliardTrajectory trace(const ConvexPolygon& K, const ConvexPolygon& T,
                         const BilliardState& start, int max_steps) {
    BilliardTrajectory traj;
    traj.states.push_back(start);
    for (int step = 0; step < max_steps; ++step) {
        const BilliardState next = reflect_step(K, T, traj.states.back());
        std::size_t repeat = traj.states.size();
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            if (dist(next.q, traj.states[i].q) + dist(next.p, traj.states[i].p) <= kClosureTol) {
                repeat = i;
                break;
            }
        }
        traj.states.push_back(next);
        if (repeat < traj.states.size() - 1) {
            traj.closed = true;
            break;
        }
    }
    const std::size_t m = traj.states.size();
    const std::size_t cycle = traj.closed ? m - 1 : m;
    traj.bounce_count = static_cast<int>(cycle);
    std::vector<Vec2> q_cycle, p_cycle;
    for (std::size_t i = 0; i < cycle; ++i) {
        q_cycle.push_back(traj.states[i].q);
        p_cycle.push_back(traj.states[i].p);
    }
    if (q_cycle.size() >= 2) {
        traj.length_T = ell_length(q_cycle, T);
        traj.length_K_dual = ell_length(p_cycle, K.point_reflected());
    }
    return traj;
}

namespace {

struct Line {
    double slope;
    double intercept;
    double at(double x) const { return slope * x + intercept; }
    double solve(double y) const { return (y - intercept) / slope; }
};

Vec2 project_to_vertical(const Line& g, double x) { return {x, g.at(x)}; }
Vec2 project_to_horizontal(const Line& g, double y) { return {g.solve(y), y}; }

void require_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " must be in (0,1)");
}

}  // namespace

double algebraic_return_map(double a1, double a2, ReturnMapPattern pattern, double z1) {
    require_open_unit(a1, "a1");
    require_open_unit(z1, "z1");
    Vec2 pt{z1, 0.0};
    switch (pattern) {
        case ReturnMapPattern::Upper: {
            require_open_unit(a2, "a2");
            const Line g1{-a1 / (1.0 - a2), z1 * a1 / (1.0 - a2)};
            const Line g2{(a1 - 1.0) / (a2 - 1.0), z1 * a1 / (1.0 - a2)};
            const Line g3{(a1 - 1.0) / a2, (1.0 - z1 * a1) / a2};
            const Line g4{a1 / a2, -a1 * z1 / a2};
            pt = project_to_vertical(g1, 0.0);
            pt = project_to_horizontal(g2, 1.0);
            pt = project_to_vertical(g3, 1.0);
            pt = project_to_horizontal(g4, 0.0);
            return pt.x;
        }
        case ReturnMapPattern::MiddleRight: {
            require_open_unit(a2, "a2");
            const Line g1{-a1 / (1.0 - a2), a1 * z1 / (1.0 - a2)};
            const Line g2{(a1 - 1.0) / (a2 - 1.0), a1 * z1 / (1.0 - a2)};
            const Line g3{-a1 / (1.0 - a2), (1.0 + a1 * z1) / (1.0 - a2)};
            const Line g4{a1 / a2, -a1 * z1 / a2};
            pt = project_to_vertical(g1, 0.0);
            pt = project_to_vertical(g2, 1.0);
            pt = project_to_horizontal(g3, 1.0);
            pt = project_to_horizontal(g4, 0.0);
            return pt.x;
        }
        case ReturnMapPattern::MiddleLeft: {
            require_open_unit(a2, "a2");
            const Line g1{(a1 - 1.0) / (a2 - 1.0), (z1 - a1 * z1) / (a2 - 1.0)};
            const Line g2{-a1 / (1.0 - a2), (-1.0 + z1 - a1 * z1) / (a2 - 1.0)};
            const Line g3{(a1 - 1.0) / (a2 - 1.0), (-1.0 + z1 - a1 * z1) / (a2 - 1.0)};
            const Line g4{(a1 - 1.0) / a2, (z1 - a1 * z1) / a2};
            pt = project_to_vertical(g1, 1.0);
            pt = project_to_vertical(g2, 0.0);
            pt = project_to_horizontal(g3, 1.0);
            pt = project_to_horizontal(g4, 0.0);
            return pt.x;
        }
        case ReturnMapPattern::LowerRight: {
            if (std::abs(a2 - 1.0) > kTolPredicate)
                throw Error(ErrorKind::ParamOutOfRange, "lower patterns require a2 = 1");
            const Line g1{a1 - 1.0, 1.0 - z1 * (a1 - 1.0)};
            const Line g2{a1, z1 * (1.0 - a1)};
            const Line g3{a1 - 1.0, z1 * (1.0 - a1)};
            pt = {z1, 1.0};  // the vertical segment x = z1 lifts (z1,0)
            pt = project_to_vertical(g1, 1.0);
            pt = project_to_vertical(g2, 0.0);
            pt = project_to_horizontal(g3, 0.0);
            return pt.x;
        }
        case ReturnMapPattern::LowerLeft: {
            if (std::abs(a2 - 1.0) > kTolPredicate)
                throw Error(ErrorKind::ParamOutOfRange, "lower patterns require a2 = 1");
            const Line g1{a1, 1.0 - a1 * z1};
            const Line g2{a1 - 1.0, 1.0 - a1 * z1};
            const Line g3{a1, -a1 * z1};
            pt = {z1, 1.0};
            pt = project_to_vertical(g1, 0.0);
            pt = project_to_vertical(g2, 1.0);
            pt = project_to_horizontal(g3, 0.0);
            return pt.x;
        }
    }
    throw Error(ErrorKind::ParamOutOfRange, "unknown pattern");
}

Vec2 dual_return_map(double a1, double a2, double z1) {
    require_open_unit(a1, "a1");
    require_open_unit(a2, "a2");
    if (!(z1 > 0.0 && z1 < a1))
        throw Error(ErrorKind::ParamOutOfRange, "z1 must be in (0, a1)");
    const Line g1{(1.0 - a2) / a1, a2};
    const Line g2{-a2 / a1, a2};
    const Line g3{a2 / (1.0 - a1), -a1 * a2 / (1.0 - a1)};
    const Line g4{-(1.0 - a2) / (1.0 - a1), (1.0 - a1 * a2) / (1.0 - a1)};
    Vec2 pt{z1, g2.at(z1)};
    pt = {g3.solve(pt.y), pt.y};  // horizontal projection onto g3
    pt = {pt.x, g4.at(pt.x)};     // vertical projection onto g4
    pt = {g1.solve(pt.y), pt.y};  // horizontal projection onto g1
    return pt;
}

std::vector<CounterexampleInstance> counterexample_catalog(int resolution) {
    std::vector<CounterexampleInstance> out;

    CounterexampleInstance tri;
    tri.name = "triangle-hexagon";
    tri.K = ConvexPolygon({{-1.0, -1.0}, {1.0, -1.0}, {0.0, 1.0}});
    tri.T = ConvexPolygon(
        {{-0.5, -1.0}, {0.5, -1.0}, {1.5, 0.0}, {0.5, 1.0}, {-0.5, 1.0}, {-1.5, 0.0}});
    tri.q = ClosedPolygonalCurve({{1.0, -1.0}, {-1.0, -1.0}});
    tri.p = {{-1.5, 0.0}, {1.5, 0.0}};
    tri.ell_printed = 6.0;
    tri.capacity_printed = 4.0;

    CounterexampleInstance sq;
    sq.name = "square-diamond";
    sq.K = ConvexPolygon({{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
    sq.T = diamond(0.5, 0.25);
    sq.q = ClosedPolygonalCurve({{1.0, -1.0}, {-1.0, 1.0}});
    sq.p = {{0.5, 1.0}, {1.0, 0.25}};
    sq.ell_printed = 2.5;
    sq.capacity_printed = 2.0;

    for (CounterexampleInstance* inst : {&tri, &sq}) {
        inst->ell_computed = ell_length(inst->q, inst->T);
        inst->capacity_computed = ehz_capacity(inst->K, inst->T, resolution).value;
        if (std::abs(inst->ell_computed - inst->ell_printed) > 1e-12)
            throw Error(ErrorKind::AssertionFailed, "counterexample l_T value not reproduced");
        if (std::abs(inst->capacity_computed - inst->capacity_printed) >
            1e-3 * inst->capacity_printed)
            throw Error(ErrorKind::AssertionFailed, "counterexample capacity not reproduced");
        out.push_back(*inst);
    }
    return out;
}

std::vector<BilliardState> regular_starts(const ConvexPolygon& K, const ConvexPolygon& T,
                                          int n_starts) {
    std::vector<BilliardState> starts;
    starts.reserve(static_cast<std::size_t>(n_starts));
    const int p_probes = 8 * n_starts + 7;
    for (int i = 0; i < n_starts; ++i) {
        const double qs = K.perimeter() * (i + 0.5) / n_starts;
        bool placed = false;
        for (int j = 0; j < p_probes && !placed; ++j) {
            // Golden-ratio offsets decorrelate the p choices from the q grid.
            const double ps =
                T.perimeter() * std::fmod((i + 0.5) * 0.6180339887498949 + (j + 0.5) / p_probes, 1.0);
            BilliardState s = make_state(K, T, qs, ps);
            if (!s.regular) continue;
            std::size_t q_edge, p_edge;
            int vtx;
            K.boundary_point(qs, &q_edge, &vtx);
            T.boundary_point(ps, &p_edge, &vtx);
            if (dot(T.edge_normal(p_edge), K.edge_normal(q_edge)) >= -1e-6) continue;
            try {
                reflect_step(K, T, s);
            } catch (const Error&) {
                continue;
            }
            starts.push_back(s);
            placed = true;
        }
    }
    return starts;
}

double coverage_sample(const ConvexPolygon& K, const ConvexPolygon& T, int n_starts, int grid) {
    K.require_nondegenerate("coverage_sample");
    std::vector<std::pair<Vec2, Vec2>> segments;
    for (const BilliardState& s : regular_starts(K, T, n_starts)) {
        BilliardTrajectory traj;
        try {
            traj = trace(K, T, s, 16);
        } catch (const Error&) {
            continue;
        }
        for (std::size_t i = 0; i + 1 < traj.states.size(); ++i)
            segments.emplace_back(traj.states[i].q, traj.states[i + 1].q);
    }

    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const Vec2& v : K.vertices()) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    const double dx = (max_x - min_x) / grid;
    const double dy = (max_y - min_y) / grid;
    const double diag = std::hypot(dx, dy);

    const auto seg_dist = [](Vec2 p, Vec2 a, Vec2 b) {
        const Vec2 d = b - a;
        const double t = std::clamp(dot(p - a, d) / norm_sq(d), 0.0, 1.0);
        return dist(p, a + t * d);
    };

    long inside = 0, covered = 0;
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            const Vec2 c{min_x + (ix + 0.5) * dx, min_y + (iy + 0.5) * dy};
            if (!K.contains(c, 0.0)) continue;
            ++inside;
            for (const auto& [a, b] : segments) {
                if (seg_dist(c, a, b) <= diag) {
                    ++covered;
                    break;
                }
            }
        }
    }
    return inside > 0 ? static_cast<double>(covered) / inside : 0.0;
}

}  // namespace ehz
