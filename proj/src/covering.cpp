#include "ehz/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ehz/equality_cases.hpp"

namespace ehz {
namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double hull_area_of_points(std::vector<Vec2>& pts) {
    const ConvexPolygon hull = convex_hull(pts);
    return hull.degenerate() ? 0.0 : hull.area();
}

// Classic Nelder-Mead on f over R^dim; returns the best point found.
template <typename F>
double nelder_mead(const F& f, std::vector<double> x0, double initial_scale,
                   std::vector<double>* best_x) {
    const std::size_t dim = x0.size();
    struct Node {
        std::vector<double> x;
        double fx;
    };
    std::vector<Node> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back({x0, f(x0)});
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> x = x0;
        x[i] += initial_scale;
        simplex.push_back({x, f(x)});
    }
    const auto by_value = [](const Node& a, const Node& b) { return a.fx < b.fx; };

    for (int iter = 0; iter < 5000; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        double spread = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            for (const Node& n : simplex)
                spread = std::max(spread, std::abs(n.x[i] - simplex[0].x[i]));
        if (spread < 1e-10 && simplex.back().fx - simplex.front().fx < 1e-10) break;

        std::vector<double> center(dim, 0.0);
        for (std::size_t s = 0; s < dim; ++s)
            for (std::size_t i = 0; i < dim; ++i) center[i] += simplex[s].x[i] / dim;
        const auto combine = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t i = 0; i < dim; ++i)
                x[i] = center[i] + t * (simplex.back().x[i] - center[i]);
            return x;
        };

        const std::vector<double> xr = combine(-1.0);
        const double fr = f(xr);
        if (fr < simplex[0].fx) {
            const std::vector<double> xe = combine(-2.0);
            const double fe = f(xe);
            if (fe < fr) simplex.back() = {xe, fe};
            else simplex.back() = {xr, fr};
        } else if (fr < simplex[dim - 1].fx) {
            simplex.back() = {xr, fr};
        } else {
            const bool outside = fr < simplex.back().fx;
            const std::vector<double> xc = combine(outside ? -0.5 : 0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, simplex.back().fx)) {
                simplex.back() = {xc, fc};
            } else {
                for (std::size_t s = 1; s <= dim; ++s) {
                    for (std::size_t i = 0; i < dim; ++i)
                        simplex[s].x[i] = simplex[0].x[i] + 0.5 * (simplex[s].x[i] - simplex[0].x[i]);
                    simplex[s].fx = f(simplex[s].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    *best_x = simplex[0].x;
    return simplex[0].fx;
}

}  // namespace

double hull_area_of_translates(const std::vector<ConvexPolygon>& shapes,
                               const std::vector<Vec2>& translations) {
    if (shapes.size() != translations.size())
        throw Error(ErrorKind::CountMismatch, "shapes and translations differ in count");
    std::vector<Vec2> pts;
    for (std::size_t s = 0; s < shapes.size(); ++s)
        for (const Vec2& v : shapes[s].vertices()) pts.push_back(v + translations[s]);
    return hull_area_of_points(pts);
}

CoveringResult minimize_hull_area(const CoveringInstance& instance, int n_starts,
                                  std::uint64_t seed) {
    if (n_starts < 1) throw Error(ErrorKind::ParamOutOfRange, "n_starts must be >= 1");
    const std::size_t k = instance.shapes.size();
    if (k < 2) throw Error(ErrorKind::ParamOutOfRange, "instance needs at least 2 shapes");
    if (instance.pinned_index >= k)
        throw Error(ErrorKind::ParamOutOfRange, "pinned_index out of range");
    const std::size_t dim = 2 * (k - 1);

    double largest = 0.0;
    for (const ConvexPolygon& s : instance.shapes) largest = std::max(largest, s.diameter());
    const double box = 2.0 * largest;

    const auto unpack = [&](const std::vector<double>& x) {
        std::vector<Vec2> tr(k, Vec2{0.0, 0.0});
        std::size_t j = 0;
        for (std::size_t s = 0; s < k; ++s) {
            if (s == instance.pinned_index) continue;
            tr[s] = {x[2 * j], x[2 * j + 1]};
            ++j;
        }
        return tr;
    };
    const auto objective = [&](const std::vector<double>& x) {
        return hull_area_of_translates(instance.shapes, unpack(x));
    };

    CoveringResult res;
    res.n_starts = n_starts;
    res.best_area = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_starts; ++j) {
        std::mt19937_64 rng(mix64(seed) ^ mix64(static_cast<std::uint64_t>(j)));
        std::uniform_real_distribution<double> uni(-box, box);
        std::vector<double> x0(dim);
        for (double& v : x0) v = uni(rng);
        std::vector<double> best_x;
        const double fx = nelder_mead(objective, x0, 0.25 * largest + 1e-3, &best_x);
        if (fx < res.best_area) {
            res.best_area = fx;
            res.best_translations = unpack(best_x);
        }
    }
    res.below_reference = res.best_area < instance.reference_area - 1e-6;
    return res;
}

CoveringInstance trapezoid_instance(double z) {
    if (!(z > 0.0 && z < 1.0)) throw Error(ErrorKind::ParamOutOfRange, "z must be in (0,1)");
    CoveringInstance inst;
    inst.shapes.push_back(ConvexPolygon({{-1.0 + z, z}, {-1.0 + z, -z}, {1.0, 0.0}}));
    inst.shapes.push_back(ConvexPolygon({{1.0 - z, z}, {1.0 - z, -z}, {-1.0, 0.0}}));
    inst.shapes.push_back(convex_hull({{0.0, -1.0}, {0.0, 1.0}}));
    inst.reference_area = 2.0;
    inst.pinned_index = 2;
    return inst;
}

namespace {

// Positions of the three vertical reference lines inside the translated
// shapes: triangle 1 has its vertical edge at x = -1+z ("l" in the original
// order), the segment sits at x = 0 ("d"), triangle 2 at x = 1-z ("r").
struct Arrangement {
    double xl, xd, xr;   // line positions after translation
    double yl, yd, yr;   // vertical shifts
};

double arrangement_hull_area(const CoveringInstance& inst, double z, const Arrangement& a) {
    const std::vector<Vec2> tr = {
        {a.xl - (-1.0 + z), a.yl}, {a.xr - (1.0 - z), a.yr}, {a.xd, a.yd}};
    return hull_area_of_translates(inst.shapes, tr);
}

double printed_bound(const std::string& order, double z, const Arrangement& a) {
    if (order == "rdl" || order == "drl" || order == "rld") return 4.0 - 2.0 * z;
    if (order == "dlr" || order == "lrd") return 2.0 + z * (1.0 - z);
    // ldr: w is the distance between the triangle lines.
    const double w = a.xr - a.xl;
    if (w <= 2.0 - 2.0 * z) return 4.0 - 2.0 * z - w;
    return 4.0 * z - 2.0 * z * z + w * (1.0 - z);
}

bool matches_order(const std::string& order, const Arrangement& a) {
    const auto pos = [&](char c) { return c == 'l' ? a.xl : (c == 'd' ? a.xd : a.xr); };
    return pos(order[0]) <= pos(order[1]) && pos(order[1]) <= pos(order[2]);
}

}  // namespace

TrapezoidCaseReport trapezoid_case_certify(double z) {
    if (!(z > 0.0 && z < 1.0)) throw Error(ErrorKind::ParamOutOfRange, "z must be in (0,1)");
    const CoveringInstance inst = trapezoid_instance(z);
    TrapezoidCaseReport report;
    report.all_bounds_hold = true;

    const int kGapSteps = 100;
    const double max_gap = 2.0;
    const std::vector<double> y_shifts = {-0.4, 0.0, 0.4};
    std::vector<std::pair<double, double>> gap_pairs;
    gap_pairs.reserve(static_cast<std::size_t>(kGapSteps) * kGapSteps + 1);
    for (int g1 = 0; g1 < kGapSteps; ++g1)
        for (int g2 = 0; g2 < kGapSteps; ++g2)
            gap_pairs.emplace_back(max_gap * g1 / (kGapSteps - 1), max_gap * g2 / (kGapSteps - 1));
    // The square configuration itself: line gaps (1-z, 1-z).
    gap_pairs.emplace_back(1.0 - z, 1.0 - z);

    for (const std::string order : {"dlr", "lrd", "ldr", "rld", "drl", "rdl"}) {
        CaseSampleReport cs;
        cs.order = order;
        cs.min_margin = std::numeric_limits<double>::infinity();
        cs.min_bound = std::numeric_limits<double>::infinity();
        for (const auto& [gap1, gap2] : gap_pairs) {
            {
                // Place the three lines of the given order at 0, gap1,
                // gap1 + gap2, then shift the middle shape vertically.
                Arrangement a{};
                const auto set = [&](char c, double x) {
                    if (c == 'l') a.xl = x;
                    else if (c == 'd') a.xd = x;
                    else a.xr = x;
                };
                set(order[0], 0.0);
                set(order[1], gap1);
                set(order[2], gap1 + gap2);
                for (double ys : y_shifts) {
                    a.yl = 0.0;
                    a.yd = 0.0;
                    a.yr = 0.0;
                    if (order[1] == 'l') a.yl = ys;
                    else if (order[1] == 'd') a.yd = ys;
                    else a.yr = ys;
                    if (!matches_order(order, a)) continue;
                    const double hull = arrangement_hull_area(inst, z, a);
                    const double bound = printed_bound(order, z, a);
                    ++cs.samples;
                    cs.min_margin = std::min(cs.min_margin, hull - bound);
                    cs.min_bound = std::min(cs.min_bound, bound);
                    if (hull < bound - 1e-9) ++cs.bound_violations;
                }
            }
        }
        if (cs.bound_violations > 0 || cs.min_bound < 2.0 - 1e-12) report.all_bounds_hold = false;
        report.cases.push_back(cs);
    }

    // The original configuration: lines at -1+z, 0, 1-z; hull is the square
    // with vertices (0,+-1), (+-1,0) of area exactly 2.
    const Arrangement square{-1.0 + z, 0.0, 1.0 - z, 0.0, 0.0, 0.0};
    report.square_configuration_area = arrangement_hull_area(inst, z, square);
    return report;
}

std::vector<SweepRow> conjecture_sweep(int grid, int n_starts, std::uint64_t seed) {
    if (grid < 2) throw Error(ErrorKind::ParamOutOfRange, "grid must be >= 2");
    std::vector<SweepRow> rows;
    for (int i = 1; i <= grid; ++i) {
        for (int j = 1; j <= grid; ++j) {
            const double a1 = static_cast<double>(i) / (grid + 1);
            const double a2 = static_cast<double>(j) / (grid + 1);
            if (std::abs(a1 - a2) < 1e-9 || std::abs(a1 + a2 - 1.0) < 1e-9) continue;
            const SplittingTriangles st = splitting_triangles(a1, a2);
            CoveringInstance inst;
            const ConvexPolygon jd1 = rotate_J(st.delta1).scaled(st.lambda1);
            const ConvexPolygon jd2 = rotate_J(st.delta2).scaled(st.lambda2);
            inst.shapes = {jd1, jd1.point_reflected(), jd2, jd2.point_reflected()};
            inst.reference_area = 1.0;
            inst.pinned_index = 0;
            const CoveringResult res =
                minimize_hull_area(inst, n_starts, seed ^ mix64(static_cast<std::uint64_t>(i * 1000 + j)));
            SweepRow row;
            row.a1 = a1;
            row.a2 = a2;
            row.lambda1 = st.lambda1;
            row.lambda2 = st.lambda2;
            row.best_area = res.best_area;
            row.gap = res.best_area - inst.reference_area;
            row.flagged = row.gap < -1e-4;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "a1,a2,lambda1,lambda2,best_area,gap,flagged\n";
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.a1, r.a2,
                      r.lambda1, r.lambda2, r.best_area, r.gap, r.flagged ? 1 : 0);
        os << buf;
    }
    return os.str();
}

}  // namespace ehz
