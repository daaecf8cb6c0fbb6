#include "ehz/capacity.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

namespace ehz {
namespace {

constexpr double kPi = std::numbers::pi;

double width_in_direction(const ConvexPolygon& T, Vec2 u) {
    return support_function(T, u) + support_function(T, -u);
}

}  // namespace

double ell_length(const std::vector<Vec2>& cycle, const ConvexPolygon& T) {
    double total = 0.0;
    const std::size_t m = cycle.size();
    for (std::size_t j = 0; j < m; ++j) {
        total += support_function(T, cycle[(j + 1) % m] - cycle[j]);
    }
    return total;
}

double ell_length(const ClosedPolygonalCurve& q, const ConvexPolygon& T) {
    if (T.degenerate()) throw Error(ErrorKind::DegenerateInput, "ell_length: degenerate T");
    return ell_length(q.vertices, T);
}

CapacityResult capacity_two_bounce(const ConvexPolygon& K, const ConvexPolygon& T) {
    K.require_nondegenerate("capacity");
    T.require_nondegenerate("capacity");
    const auto objective = [&](double theta) {
        const Vec2 u{std::cos(theta), std::sin(theta)};
        return chord_length(K, u) * width_in_direction(T, u);
    };

    // Angular samples: uniform grid plus edge-normal and edge-direction
    // breakpoints of both bodies, all mod pi.
    std::vector<double> thetas;
    thetas.reserve(3600 + 4 * (K.size() + T.size()));
    for (int k = 0; k < 3600; ++k) thetas.push_back(kPi * k / 3600.0);
    const auto add_breaks = [&](const ConvexPolygon& P) {
        for (std::size_t i = 0; i < P.size(); ++i) {
            const Vec2 e = P.edge_vector(i);
            double a = std::atan2(e.y, e.x);
            double b = std::atan2(-e.x, e.y);  // normal direction
            for (double t : {a, b}) {
                t = std::fmod(t, kPi);
                if (t < 0.0) t += kPi;
                thetas.push_back(t);
            }
        }
    };
    add_breaks(K);
    add_breaks(T);
    std::sort(thetas.begin(), thetas.end());

    std::vector<double> values(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) values[i] = objective(thetas[i]);

    std::vector<std::size_t> order(thetas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && a < b);
    });

    double best_val = values[order[0]];
    double best_theta = thetas[order[0]];
    const std::size_t n = thetas.size();
    std::size_t refined = 0;
    for (std::size_t r = 0; r < order.size() && refined < 5; ++r) {
        const std::size_t i = order[r];
        // Skip samples adjacent to an already refined better one.
        if (r > 0 && std::abs(thetas[i] - best_theta) < 1e-12) continue;
        ++refined;
        double lo = thetas[(i + n - 1) % n] + (i == 0 ? -kPi : 0.0);
        double hi = thetas[(i + 1) % n] + (i + 1 == n ? kPi : 0.0);
        // Golden-section search to relative tolerance 1e-10.
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo, b = hi;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = objective(c), fd = objective(d);
        while (b - a > 1e-10 * std::max(1.0, std::abs(a) + std::abs(b))) {
            if (fc < fd) {
                b = d; d = c; fd = fc;
                c = b - gr * (b - a);
                fc = objective(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + gr * (b - a);
                fd = objective(d);
            }
        }
        const double mid = 0.5 * (a + b);
        const double fm = objective(mid);
        if (fm < best_val) {
            best_val = fm;
            best_theta = mid;
        }
    }

    const Vec2 u{std::cos(best_theta), std::sin(best_theta)};
    Vec2 pa, pb;
    chord_length(K, u, &pa, &pb);
    CapacityResult res;
    res.value = best_val;
    res.optimizer_curve = ClosedPolygonalCurve({pa, pb});
    res.solver = Solver::TwoBounceExact;
    res.dual_value = best_val;
    res.grid_resolution = 0;
    return res;
}

namespace {

// Angular interval of a normal cone, stored as [start, extent] radians.
struct ConeArc {
    double start;
    double extent;
};

double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

// Minimal achievable maximum circular gap over one angle pick per arc.
// Endpoint choices suffice for three intervals.
double min_max_gap(const ConeArc& a, const ConeArc& b, const ConeArc& c) {
    const std::array<const ConeArc*, 3> arcs{&a, &b, &c};
    double best = std::numeric_limits<double>::infinity();
    const int combos = (a.extent > 0.0 ? 2 : 1) * (b.extent > 0.0 ? 2 : 1) *
                       (c.extent > 0.0 ? 2 : 1);
    for (int mask = 0; mask < 8; ++mask) {
        if (combos == 1 && mask > 0) break;
        std::array<double, 3> ang{};
        for (int i = 0; i < 3; ++i) {
            const ConeArc* arc = arcs[static_cast<std::size_t>(i)];
            ang[static_cast<std::size_t>(i)] =
                (mask >> i & 1) ? arc->start + arc->extent : arc->start;
        }
        for (double& t : ang) {
            t = std::fmod(t, 2.0 * kPi);
            if (t < 0.0) t += 2.0 * kPi;
        }
        std::sort(ang.begin(), ang.end());
        const double g0 = ang[1] - ang[0];
        const double g1 = ang[2] - ang[1];
        const double g2 = 2.0 * kPi - ang[2] + ang[0];
        best = std::min(best, std::max({g0, g1, g2}));
    }
    return best;
}

// Positive spanning with margin 1e-9 keeps boundary-of-feasibility
// minimizers (2-bounce degenerations sit at gap = pi exactly).
enum class SpanClass { NoSpan, Marginal, Strict };

SpanClass classify_span(const ConeArc& a, const ConeArc& b, const ConeArc& c) {
    const double gap = min_max_gap(a, b, c);
    if (gap > kPi + 1e-9) return SpanClass::NoSpan;
    if (gap < kPi - 1e-9) return SpanClass::Strict;
    return SpanClass::Marginal;
}

struct BoundaryGrid {
    std::vector<double> arcs;      // arc-length parameter of each grid point
    std::vector<Vec2> points;
    std::vector<ConeArc> cones;    // normal cone at each grid point
};

ConeArc cone_arc_at(const ConvexPolygon& K, std::size_t edge, int vertex) {
    if (vertex >= 0) {
        const std::size_t n = K.size();
        const std::size_t v = static_cast<std::size_t>(vertex);
        const Vec2 n_prev = K.edge_normal((v + n - 1) % n);
        const Vec2 n_next = K.edge_normal(v);
        const double s = angle_of(n_prev);
        double ext = angle_of(n_next) - s;
        ext = std::fmod(ext, 2.0 * kPi);
        if (ext < 0.0) ext += 2.0 * kPi;
        return {s, ext};
    }
    return {angle_of(K.edge_normal(edge)), 0.0};
}

// Grid of about `resolution` points on the boundary, arc-length spaced per
// edge with every polygon vertex included exactly.
BoundaryGrid make_grid(const ConvexPolygon& K, int resolution) {
    BoundaryGrid g;
    const std::size_t n = K.size();
    for (std::size_t e = 0; e < n; ++e) {
        const double frac = K.edge_length(e) / K.perimeter();
        const int cnt = std::max(1, static_cast<int>(std::llround(resolution * frac)));
        for (int k = 0; k < cnt; ++k) {
            const double s = K.arc_of_vertex(e) + K.edge_length(e) * k / cnt;
            g.arcs.push_back(s);
            if (k == 0) {
                g.points.push_back(K[e]);
                g.cones.push_back(cone_arc_at(K, e, static_cast<int>(e)));
            } else {
                g.points.push_back(K[e] + (static_cast<double>(k) / cnt) * K.edge_vector(e));
                g.cones.push_back(cone_arc_at(K, e, -1));
            }
        }
    }
    return g;
}

struct TripleCandidate {
    double value = std::numeric_limits<double>::infinity();
    std::array<double, 3> s{};   // arc-length parameters, ascending
    std::array<Vec2, 3> pts{};   // cycle in evaluation order
    bool found = false;

    bool better_than(const TripleCandidate& o) const {
        if (!found) return false;
        if (!o.found) return true;
        if (value != o.value) return value < o.value;
        return s < o.s;
    }
};

// Feasibility of a boundary triple: normal cones positively span the plane
// (margin 1e-9) and the curve fails fits_by_translation against K. When
// the cones span strictly, no translation into the interior exists (any
// interior translation direction would have negative products with a
// spanning normal choice), so the fits test is decided; it is evaluated
// explicitly only in the marginal band.
bool triple_feasible(const ConvexPolygon& K, const std::array<Vec2, 3>& pts,
                     const ConeArc& c1, const ConeArc& c2, const ConeArc& c3,
                     double area_threshold) {
    switch (classify_span(c1, c2, c3)) {
        case SpanClass::NoSpan: return false;
        case SpanClass::Strict: return true;
        case SpanClass::Marginal: break;
    }
    return translate_intersection_area({pts[0], pts[1], pts[2]}, K, nullptr) <= area_threshold;
}

// A minimizing triple may degenerate to a collinear configuration (the
// 2-bounce boundary of the feasible set); collapse it to the extreme pair
// so the result is a valid closed polygonal curve.
ClosedPolygonalCurve curve_from_triple(const std::array<Vec2, 3>& pts) {
    try {
        return ClosedPolygonalCurve({pts[0], pts[1], pts[2]});
    } catch (const Error&) {
        int bi = 0, bj = 1;
        double best = -1.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const double d = dist(pts[static_cast<std::size_t>(i)],
                                      pts[static_cast<std::size_t>(j)]);
                if (d > best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        return ClosedPolygonalCurve(
            {pts[static_cast<std::size_t>(bi)], pts[static_cast<std::size_t>(bj)]});
    }
}

ConeArc cone_arc_at_param(const ConvexPolygon& K, double s, Vec2* point) {
    std::size_t edge;
    int vertex;
    *point = K.boundary_point(s, &edge, &vertex);
    return cone_arc_at(K, edge, vertex);
}

// Coordinate/pattern descent on arc-length parameters, keeping feasibility.
// Step halving from one grid cell down to 1e-9. The feasibility area
// threshold here is tighter than the fits_by_translation default so the
// polished value never dips below the true minimum by more than round-off.
TripleCandidate refine_triple(const ConvexPolygon& K, const ConvexPolygon& T,
                              TripleCandidate cand, double initial_step) {
    constexpr double kRefineAreaThreshold = 1e-14;
    const auto eval = [&](const std::array<double, 3>& s, TripleCandidate* out) {
        std::array<Vec2, 3> pts;
        std::array<ConeArc, 3> cones;
        for (int i = 0; i < 3; ++i)
            cones[static_cast<std::size_t>(i)] =
                cone_arc_at_param(K, s[static_cast<std::size_t>(i)], &pts[static_cast<std::size_t>(i)]);
        if (!triple_feasible(K, pts, cones[0], cones[1], cones[2], kRefineAreaThreshold)) return false;
        out->value = ell_length({pts[0], pts[1], pts[2]}, T);
        out->s = s;
        out->pts = pts;
        out->found = true;
        return true;
    };

    double step = initial_step;
    while (step > 1e-9) {
        bool improved = false;
        // Full sign-pattern neighborhood: all 3^3 - 1 moves.
        for (int move = 0; move < 27; ++move) {
            if (move == 13) continue;  // zero offset
            std::array<double, 3> s = cand.s;
            s[0] += step * (move % 3 - 1);
            s[1] += step * ((move / 3) % 3 - 1);
            s[2] += step * ((move / 9) % 3 - 1);
            TripleCandidate next;
            if (eval(s, &next) && next.value < cand.value - 1e-15) {
                cand = next;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }
    return cand;
}

}  // namespace

CapacityResult capacity_three_bounce_oracle(const ConvexPolygon& K, const ConvexPolygon& T,
                                            int resolution) {
    K.require_nondegenerate("capacity");
    T.require_nondegenerate("capacity");
    if (resolution < 60) throw Error(ErrorKind::ParamOutOfRange, "oracle resolution must be >= 60");

    // Translate T so that its centroid is the origin: support values of the
    // edge vectors become nonnegative, which validates the partial-sum and
    // pair-width prunes. ell_length itself is invariant under this shift.
    const ConvexPolygon Tc = T.translated(-T.centroid());

    const BoundaryGrid grid = make_grid(K, resolution);
    const std::size_t N = grid.points.size();

    // H[a*N+b] = h_T(P_b - P_a); HT is its transpose for contiguous access.
    std::vector<double> H(N * N), HT(N * N);
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < N; ++b) {
            H[a * N + b] = a == b ? 0.0 : support_function(Tc, grid.points[b] - grid.points[a]);
        }
    }
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) HT[a * N + b] = H[b * N + a];

    // Seed the bound from a coarse sub-grid so the pair prune is effective
    // from the start. Only the bound is seeded; every grid triple below it
    // is still examined, so the result matches the unseeded scan.
    std::atomic<double> bound{std::numeric_limits<double>::infinity()};
    {
        const std::size_t stride = std::max<std::size_t>(1, N / 48);
        std::vector<std::size_t> coarse;
        for (std::size_t i = 0; i < N; i += stride) coarse.push_back(i);
        const std::size_t M = coarse.size();
        double seed = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < M; ++a) {
            for (std::size_t b = a + 1; b < M; ++b) {
                for (std::size_t c = b + 1; c < M; ++c) {
                    const std::size_t i = coarse[a], j = coarse[b], k = coarse[c];
                    for (int orient = 0; orient < 2; ++orient) {
                        const std::array<Vec2, 3> pts =
                            orient == 0
                                ? std::array<Vec2, 3>{grid.points[i], grid.points[j],
                                                      grid.points[k]}
                                : std::array<Vec2, 3>{grid.points[i], grid.points[k],
                                                      grid.points[j]};
                        const double val = ell_length({pts[0], pts[1], pts[2]}, Tc);
                        if (val >= seed) continue;
                        if (triple_feasible(K, pts, grid.cones[i], grid.cones[j],
                                            grid.cones[k], 1e-12))
                            seed = val;
                    }
                }
            }
        }
        if (seed < std::numeric_limits<double>::infinity()) bound.store(seed);
    }

    const auto scan_range = [&](std::size_t i_begin, std::size_t i_end) {
        TripleCandidate best;
        const auto consider = [&](std::size_t i, std::size_t j, std::size_t k, int orient,
                                  double val) {
            if (best.found && val == best.value) return;  // keep lex-first
            const std::array<Vec2, 3> pts =
                orient == 0 ? std::array<Vec2, 3>{grid.points[i], grid.points[j], grid.points[k]}
                            : std::array<Vec2, 3>{grid.points[i], grid.points[k], grid.points[j]};
            if (!triple_feasible(K, pts, grid.cones[i], grid.cones[j], grid.cones[k], 1e-12))
                return;
            TripleCandidate cand;
            cand.value = val;
            cand.s = orient == 0
                         ? std::array<double, 3>{grid.arcs[i], grid.arcs[j], grid.arcs[k]}
                         : std::array<double, 3>{grid.arcs[i], grid.arcs[k], grid.arcs[j]};
            cand.pts = pts;
            cand.found = true;
            if (cand.better_than(best)) {
                best = cand;
                // Monotone shared bound; stale reads only reduce pruning.
                double prev = bound.load(std::memory_order_relaxed);
                while (prev > cand.value && !bound.compare_exchange_weak(prev, cand.value)) {
                }
            }
        };
        for (std::size_t i = i_begin; i < i_end; ++i) {
            const double* h_i = &H[i * N];
            const double* ht_i = &HT[i * N];
            for (std::size_t j = i + 1; j + 1 < N; ++j) {
                const double hij = h_i[j];
                const double hji = ht_i[j];
                double local_bound =
                    std::min(bound.load(std::memory_order_relaxed),
                             best.found ? best.value : std::numeric_limits<double>::infinity());
                // Any cycle through i and j costs at least the collapsed
                // 2-cycle (subadditivity of the support function).
                if (hij + hji > local_bound) continue;
                const double* h_j = &H[j * N];
                const double* ht_j = &HT[j * N];
                // Branchless minimum scan first; the feasibility pass runs
                // only when this pair can reach the bound at all.
                double m1 = std::numeric_limits<double>::infinity();
                double m2 = m1;
                for (std::size_t k = j + 1; k < N; ++k) {
                    const double c1 = h_j[k] + ht_i[k];
                    const double c2 = h_i[k] + ht_j[k];
                    m1 = c1 < m1 ? c1 : m1;
                    m2 = c2 < m2 ? c2 : m2;
                }
                if (hij + m1 > local_bound && hji + m2 > local_bound) continue;
                for (std::size_t k = j + 1; k < N; ++k) {
                    const double ccw = hij + h_j[k] + ht_i[k];
                    const double cw = h_i[k] + ht_j[k] + hji;
                    if (ccw <= local_bound) {
                        consider(i, j, k, 0, ccw);
                        local_bound = std::min(
                            local_bound, best.found ? best.value
                                                    : std::numeric_limits<double>::infinity());
                    }
                    if (cw <= local_bound) {
                        consider(i, j, k, 1, cw);
                        local_bound = std::min(
                            local_bound, best.found ? best.value
                                                    : std::numeric_limits<double>::infinity());
                    }
                }
            }
        }
        return best;
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_chunks = std::min<std::size_t>(std::min<std::size_t>(hw, 8), N);
    std::vector<std::future<TripleCandidate>> futures;
    futures.reserve(n_chunks);
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const std::size_t i_begin = N * c / n_chunks;
        const std::size_t i_end = N * (c + 1) / n_chunks;
        futures.push_back(std::async(std::launch::async, scan_range, i_begin, i_end));
    }
    TripleCandidate best;
    for (auto& f : futures) {
        const TripleCandidate cand = f.get();
        if (cand.better_than(best)) best = cand;
    }

    if (!best.found)
        throw Error(ErrorKind::NoFeasibleTriple, "no feasible boundary triple at this resolution");

    const double cell = K.perimeter() / static_cast<double>(N);
    best = refine_triple(K, Tc, best, cell);

    CapacityResult res;
    res.value = best.value;
    res.optimizer_curve = curve_from_triple(best.pts);
    res.solver = Solver::ThreeBounceOracle;
    res.dual_value = best.value;
    res.grid_resolution = resolution;
    return res;
}

namespace {

CapacityResult combined_one_way(const ConvexPolygon& K, const ConvexPolygon& T, int resolution) {
    CapacityResult two = capacity_two_bounce(K, T);
    CapacityResult three = capacity_three_bounce_oracle(K, T, resolution);
    return three.value < two.value ? three : two;
}

}  // namespace

CapacityResult ehz_capacity(const ConvexPolygon& K, const ConvexPolygon& T, int resolution) {
    CapacityResult primal = combined_one_way(K, T, resolution);
    CapacityResult dual = combined_one_way(T, K, resolution);
    CapacityResult res = primal;
    res.dual_value = dual.value;
    res.grid_resolution = resolution;
    return res;
}

SystolicReport systolic_report_from_value(double capacity, const ConvexPolygon& K,
                                          const ConvexPolygon& T) {
    SystolicReport rep;
    rep.capacity = capacity;
    rep.volume_product = K.area() * T.area();
    rep.ratio = capacity * capacity / (2.0 * rep.volume_product);
    rep.is_equality = std::abs(rep.ratio - 1.0) <= 1e-6;
    return rep;
}

SystolicReport systolic_report(const ConvexPolygon& K, const ConvexPolygon& T, int resolution) {
    return systolic_report_from_value(ehz_capacity(K, T, resolution).value, K, T);
}

bool is_trapezoid(const ConvexPolygon& Q, double angular_tol) {
    if (Q.degenerate()) return false;
    if (Q.size() == 3) return true;  // triangles are degenerate trapezoids
    if (Q.size() != 4) return false;
    for (std::size_t i = 0; i < 2; ++i) {
        const Vec2 a = normalized(Q.edge_vector(i));
        const Vec2 b = normalized(Q.edge_vector(i + 2));
        if (std::abs(cross(a, b)) <= angular_tol) return true;
    }
    return false;
}

bool worm_inequality_check(const ConvexPolygon& K, const ConvexPolygon& Q, int resolution) {
    K.require_nondegenerate("capacity");
    if (!is_trapezoid(Q)) throw Error(ErrorKind::QNotTrapezoid, "Q is not a trapezoid");
    // The sharp inequality compares against trapezoids of unit area.
    const ConvexPolygon Qn = Q.scaled(1.0 / std::sqrt(Q.area()));
    const double cap = ehz_capacity(K, Qn, resolution).value;
    return cap * cap <= 2.0 * K.area() * (1.0 + 1e-3);
}

}  // namespace ehz
