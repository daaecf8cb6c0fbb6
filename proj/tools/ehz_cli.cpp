// Command-line surface for the EHZ capacity toolkit: JSON in, JSON/CSV/SVG
// out, one subcommand per workflow. Exit codes: 0 success, 2 validation or
// parse failure, 3 a published identity was not reproduced within tolerance.
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ehz/capacity.hpp"
#include "ehz/covering.hpp"
#include "ehz/dynamics.hpp"
#include "ehz/equality_cases.hpp"
#include "ehz/geom2d.hpp"
#include "ehz/json_io.hpp"
#include "ehz/symplecto.hpp"

namespace {

using namespace ehz;

constexpr int kExitValidation = 2;
constexpr int kExitAssertion = 3;

std::string resolve_output(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("EHZ_OUTPUT_DIR");
    if (dir == nullptr || dir[0] == '\0') return path;
    return std::string(dir) + "/" + path;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fputs(content.c_str(), stdout);
        std::fputc('\n', stdout);
    } else {
        write_text_atomic(resolve_output(out_path), content);
    }
}

struct CommonPaths {
    std::string k_path;
    std::string t_path;
    std::string out;
};

int run_capacity(const CommonPaths& paths, int resolution, bool ratio_mode) {
    const ConvexPolygon K = read_polygon_file(paths.k_path);
    const ConvexPolygon T = read_polygon_file(paths.t_path);
    const CapacityResult r = ehz_capacity(K, T, resolution);
    if (ratio_mode) {
        emit(paths.out, systolic_report_to_json_text(systolic_report_from_value(r.value, K, T)));
    } else {
        emit(paths.out, capacity_result_to_json_text(r));
    }
    return 0;
}

struct EqualityOptions {
    std::string family;
    double a1 = 0.5;
    double a2 = 0.25;
    double t1 = 0.0;
    double t2 = 0.0;
    std::string params_path;
    int resolution = kDefaultOracleResolution;
    double tolerance = 2e-3;
    std::string out;
};

int run_equality(const EqualityOptions& opt) {
    ConvexPolygon K({{0, 0}, {1, 0}, {0, 1}});
    ConvexPolygon T = K;
    if (opt.family == "square-diamond") {
        K = ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        T = diamond(opt.a1, opt.a2);
    } else if (opt.family == "t-star") {
        const TStarSpec star = t_star(standard_triangle(), {opt.t1, opt.t2});
        K = star.base_triangle;
        T = star.hull;
    } else if (opt.family == "quad-partner") {
        if (opt.params_path.empty())
            throw Error(ErrorKind::ParseError, "quad-partner requires --params");
        const QuadParams p = quad_params_from_json_text(read_text_file(opt.params_path));
        K = quadrilateral_from_params(p);
        T = equality_partner(p);
    } else {
        throw Error(ErrorKind::ParseError, "unknown family: " + opt.family);
    }
    const SystolicReport rep = systolic_report(K, T, opt.resolution);
    emit(opt.out, systolic_report_to_json_text(rep));
    if (std::abs(rep.ratio - 1.0) > opt.tolerance) {
        std::fprintf(stderr, "equality: systolic ratio %.12g deviates from 1 beyond %g\n",
                     rep.ratio, opt.tolerance);
        return kExitAssertion;
    }
    return 0;
}

struct ZollOptions {
    std::string case_name;
    double a1 = 0.5;
    double a2 = 0.25;
    double t1 = 0.0;
    double t2 = 0.0;
    int starts = 100;
    int resolution = kDefaultOracleResolution;
    double length_tol = 1e-6;
    std::string out;
};

int run_zoll(const ZollOptions& opt) {
    ConvexPolygon K({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    ConvexPolygon T = diamond(opt.a1, opt.a2);
    if (opt.case_name == "t-star") {
        const TStarSpec star = t_star(standard_triangle(), {opt.t1, opt.t2});
        K = star.base_triangle;
        T = star.hull;
    } else if (opt.case_name != "square-diamond") {
        throw Error(ErrorKind::ParseError, "unknown case: " + opt.case_name);
    }
    const double capacity = ehz_capacity(K, T, opt.resolution).value;
    int closed = 0, four = 0, length_ok = 0, traced = 0;
    double worst_residual = 0.0;
    for (const BilliardState& s : regular_starts(K, T, opt.starts)) {
        BilliardTrajectory traj;
        try {
            traj = trace(K, T, s, 12);
        } catch (const Error&) {
            continue;
        }
        ++traced;
        if (!traj.closed) continue;
        ++closed;
        if (traj.bounce_count == 4) ++four;
        const BilliardState& a = traj.states.front();
        const BilliardState& b = traj.states.back();
        worst_residual = std::max(worst_residual, dist(a.q, b.q) + dist(a.p, b.p));
        if (std::abs(traj.length_T - capacity) <= opt.length_tol) ++length_ok;
    }
    std::string line = "closed=" + std::to_string(closed) + "/" + std::to_string(traced) +
                       ", bounces=4 for " + std::to_string(four) + ", length=capacity for " +
                       std::to_string(length_ok);
    std::printf("%s\n", line.c_str());
    if (!opt.out.empty()) {
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "{\"traced\": %d, \"closed\": %d, \"four_bounces\": %d, "
                      "\"length_matches\": %d, \"capacity\": %.17g, \"worst_residual\": %.17g}",
                      traced, closed, four, length_ok, capacity, worst_residual);
        emit(opt.out, buf);
    }
    return (closed == traced && four == closed && length_ok == closed) ? 0 : kExitAssertion;
}

struct CoveringOptions {
    std::string mode;
    double z = 0.5;
    int grid = 9;
    int starts = 100;
    std::uint64_t seed = 1;
    std::string out;
};

int run_covering(const CoveringOptions& opt) {
    if (opt.mode == "trapezoid") {
        const CoveringInstance inst = trapezoid_instance(opt.z);
        const CoveringResult res = minimize_hull_area(inst, opt.starts, opt.seed);
        const TrapezoidCaseReport cert = trapezoid_case_certify(opt.z);
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "{\"z\": %.17g, \"best_area\": %.17g, \"below_reference\": %s, "
                      "\"bounds_certified\": %s, \"square_configuration_area\": %.17g}",
                      opt.z, res.best_area, res.below_reference ? "true" : "false",
                      cert.all_bounds_hold ? "true" : "false", cert.square_configuration_area);
        emit(opt.out, buf);
        return (!res.below_reference && cert.all_bounds_hold) ? 0 : kExitAssertion;
    }
    if (opt.mode == "sweep") {
        const auto rows = conjecture_sweep(opt.grid, opt.starts, opt.seed);
        emit(opt.out, sweep_to_csv(rows));
        for (const SweepRow& r : rows) {
            if (r.flagged) {
                std::fprintf(stderr, "sweep: flagged candidate at a1=%g a2=%g gap=%g\n", r.a1,
                             r.a2, r.gap);
                return kExitAssertion;
            }
        }
        return 0;
    }
    throw Error(ErrorKind::ParseError, "unknown covering mode: " + opt.mode);
}

int run_counterexample(int resolution, const std::string& out) {
    const auto catalog = counterexample_catalog(resolution);
    std::string doc = "[";
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const auto& inst = catalog[i];
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "%s{\"name\": \"%s\", \"ell\": %.17g, \"capacity\": %.17g, "
                      "\"ell_printed\": %.17g, \"capacity_printed\": %.17g}",
                      i ? ", " : "", inst.name, inst.ell_computed, inst.capacity_computed,
                      inst.ell_printed, inst.capacity_printed);
        doc += buf;
        std::printf("%s: ell_T = %.12g (expected %.12g), capacity = %.12g (expected %.12g)\n",
                    inst.name, inst.ell_computed, inst.ell_printed, inst.capacity_computed,
                    inst.capacity_printed);
    }
    doc += "]";
    if (!out.empty()) emit(out, doc);
    return 0;
}

struct NormalFormOptions {
    std::string case_name;
    double t1 = 0.0;
    double t2 = 0.0;
    std::string params_path;
    std::string out;
};

int run_normal_form(const NormalFormOptions& opt) {
    if (opt.case_name == "triangle") {
        const TriangleNormalForm nf = triangle_normal_form({opt.t1, opt.t2});
        const double residual = triangle_normal_form_residual(nf, {opt.t1, opt.t2});
        char buf[1024];
        std::snprintf(
            buf, sizeof(buf),
            "{\"edge\": %d, \"A\": [[%.17g, %.17g], [%.17g, %.17g]], \"s1\": [%.17g, %.17g], "
            "\"s2\": [%.17g, %.17g], \"a\": %.17g, \"a1\": %.17g, \"a2\": %.17g, "
            "\"residual\": %.3g}",
            nf.edge, nf.A.m[0][0], nf.A.m[0][1], nf.A.m[1][0], nf.A.m[1][1], nf.s1.x, nf.s1.y,
            nf.s2.x, nf.s2.y, nf.a, nf.a1, nf.a2, residual);
        emit(opt.out, buf);
        return residual <= 1e-12 ? 0 : kExitAssertion;
    }
    if (opt.case_name == "quadrilateral") {
        if (opt.params_path.empty())
            throw Error(ErrorKind::ParseError, "quadrilateral requires --params");
        const QuadParams p = quad_params_from_json_text(read_text_file(opt.params_path));
        const QuadNormalForm nf = quadrilateral_normal_form(p);
        std::string doc = "{\"x_chain\": " + map_chain_to_json_text(nf.x_chain) +
                          ", \"y_chain\": " + map_chain_to_json_text(nf.y_chain);
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      ", \"ball\": {\"a\": %.17g, \"a1\": %.17g, \"a2\": %.17g, "
                      "\"radius\": %.17g, \"volume\": %.17g}}",
                      nf.ball.a, nf.ball.a1, nf.ball.a2, nf.ball.radius, nf.ball.volume);
        doc += buf;
        emit(opt.out, doc);
        return 0;
    }
    throw Error(ErrorKind::ParseError, "unknown normal-form case: " + opt.case_name);
}

struct PlotOptions {
    std::string k_path;
    std::string t_path;
    std::string traj_case;
    double a1 = 0.5;
    double a2 = 0.25;
    int start = 0;
    std::string out;
};

int run_plot(const PlotOptions& opt) {
    std::optional<ConvexPolygon> K, T;
    if (!opt.k_path.empty()) K = read_polygon_file(opt.k_path);
    if (!opt.t_path.empty()) T = read_polygon_file(opt.t_path);
    std::optional<BilliardTrajectory> traj;
    if (!opt.traj_case.empty()) {
        if (opt.traj_case != "square-diamond")
            throw Error(ErrorKind::ParseError, "unknown trajectory case: " + opt.traj_case);
        K = ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        T = diamond(opt.a1, opt.a2);
        const auto starts = regular_starts(*K, *T, std::max(1, opt.start + 1));
        if (!starts.empty()) traj = trace(*K, *T, starts[static_cast<std::size_t>(
                                                      std::min<int>(opt.start, static_cast<int>(starts.size()) - 1))],
                                          12);
    }
    const std::string svg = render_svg(K ? &*K : nullptr, T ? &*T : nullptr,
                                       traj ? &*traj : nullptr);
    if (opt.out.empty()) throw Error(ErrorKind::ParseError, "plot requires --out");
    emit(opt.out, svg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EHZ capacity toolkit for Lagrangian products of planar polygons"};
    app.require_subcommand(1);

    CommonPaths cap_paths;
    int cap_resolution = kDefaultOracleResolution;
    CLI::App* cap = app.add_subcommand("capacity", "EHZ capacity of K x T");
    cap->add_option("--K", cap_paths.k_path, "polygon JSON for K")->required();
    cap->add_option("--T", cap_paths.t_path, "polygon JSON for T")->required();
    cap->add_option("--resolution", cap_resolution, "oracle boundary resolution");
    cap->add_option("--out", cap_paths.out, "output JSON path");

    CommonPaths ratio_paths;
    int ratio_resolution = kDefaultOracleResolution;
    CLI::App* ratio = app.add_subcommand("ratio", "systolic ratio of K x T");
    ratio->add_option("--K", ratio_paths.k_path, "polygon JSON for K")->required();
    ratio->add_option("--T", ratio_paths.t_path, "polygon JSON for T")->required();
    ratio->add_option("--resolution", ratio_resolution, "oracle boundary resolution");
    ratio->add_option("--out", ratio_paths.out, "output JSON path");

    EqualityOptions eq;
    CLI::App* equality = app.add_subcommand("equality", "construct and verify a catalog family");
    equality->add_option("--family", eq.family, "t-star | square-diamond | quad-partner")
        ->required();
    equality->add_option("--a1", eq.a1, "diamond parameter a1");
    equality->add_option("--a2", eq.a2, "diamond parameter a2");
    equality->add_option("--t1", eq.t1, "t-star parameter t1");
    equality->add_option("--t2", eq.t2, "t-star parameter t2");
    equality->add_option("--params", eq.params_path, "QuadParams JSON path");
    equality->add_option("--resolution", eq.resolution, "oracle boundary resolution");
    equality->add_option("--tolerance", eq.tolerance, "ratio tolerance");
    equality->add_option("--out", eq.out, "output JSON path");

    ZollOptions zoll;
    CLI::App* zl = app.add_subcommand("zoll", "closure/length report over sampled starts");
    zl->add_option("--case", zoll.case_name, "square-diamond | t-star")->required();
    zl->add_option("--a1", zoll.a1, "diamond parameter a1");
    zl->add_option("--a2", zoll.a2, "diamond parameter a2");
    zl->add_option("--t1", zoll.t1, "t-star parameter t1");
    zl->add_option("--t2", zoll.t2, "t-star parameter t2");
    zl->add_option("--starts", zoll.starts, "number of regular starts");
    zl->add_option("--resolution", zoll.resolution, "oracle boundary resolution");
    zl->add_option("--length-tolerance", zoll.length_tol, "length match tolerance");
    zl->add_option("--out", zoll.out, "output JSON path");

    CoveringOptions cov;
    CLI::App* cv = app.add_subcommand("covering", "covering instances and the conjecture sweep");
    cv->add_option("--mode", cov.mode, "trapezoid | sweep")->required();
    cv->add_option("--z", cov.z, "trapezoid parameter z in (0,1)");
    cv->add_option("--grid", cov.grid, "sweep grid size");
    cv->add_option("--starts", cov.starts, "multi-start count");
    cv->add_option("--seed", cov.seed, "RNG seed")->required();
    cv->add_option("--out", cov.out, "output path (JSON or CSV)");

    int ce_resolution = kDefaultOracleResolution;
    std::string ce_out;
    CLI::App* ce = app.add_subcommand("counterexample", "the two non-regular instances");
    ce->add_option("--resolution", ce_resolution, "oracle boundary resolution");
    ce->add_option("--out", ce_out, "output JSON path");

    NormalFormOptions nf;
    CLI::App* nfc = app.add_subcommand("normal-form", "normal-form map chains");
    nfc->add_option("--case", nf.case_name, "triangle | quadrilateral")->required();
    nfc->add_option("--t1", nf.t1, "triangle-case parameter t1");
    nfc->add_option("--t2", nf.t2, "triangle-case parameter t2");
    nfc->add_option("--params", nf.params_path, "QuadParams JSON path");
    nfc->add_option("--out", nf.out, "output JSON path");

    PlotOptions plot;
    CLI::App* pl = app.add_subcommand("plot", "SVG of bodies and trajectories");
    pl->add_option("--K", plot.k_path, "polygon JSON for K");
    pl->add_option("--T", plot.t_path, "polygon JSON for T");
    pl->add_option("--case", plot.traj_case, "trajectory case (square-diamond)");
    pl->add_option("--a1", plot.a1, "diamond parameter a1");
    pl->add_option("--a2", plot.a2, "diamond parameter a2");
    pl->add_option("--start", plot.start, "start index for the trajectory");
    pl->add_option("--out", plot.out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cap->parsed()) return run_capacity(cap_paths, cap_resolution, false);
        if (ratio->parsed()) return run_capacity(ratio_paths, ratio_resolution, true);
        if (equality->parsed()) return run_equality(eq);
        if (zl->parsed()) return run_zoll(zoll);
        if (cv->parsed()) return run_covering(cov);
        if (ce->parsed()) return run_counterexample(ce_resolution, ce_out);
        if (nfc->parsed()) return run_normal_form(nf);
        if (pl->parsed()) return run_plot(plot);
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", error_kind_name(e.kind()), e.what());
        return e.kind() == ErrorKind::AssertionFailed ? kExitAssertion : kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return 0;
}
