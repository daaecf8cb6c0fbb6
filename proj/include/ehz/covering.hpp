#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ehz/geom2d.hpp"

namespace ehz {

// Volume-minimizing convex hulls of translates. Degenerate segments are
// allowed as shapes here; they participate through their two endpoints.
struct CoveringInstance {
    std::vector<ConvexPolygon> shapes;
    double reference_area = 1.0;   // conjectured minimum
    std::size_t pinned_index = 0;  // shape whose translation stays zero
};

struct CoveringResult {
    double best_area = 0.0;
    std::vector<Vec2> best_translations;
    int n_starts = 0;
    bool below_reference = false;  // best_area < reference_area - 1e-6
};

double hull_area_of_translates(const std::vector<ConvexPolygon>& shapes,
                               const std::vector<Vec2>& translations);

// Multi-start Nelder-Mead over the 2(k-1) free translation coordinates.
// Start j draws from a generator derived from (seed, j), so extending
// n_starts only improves or ties. Shrink tolerance 1e-10, 5000 iterations
// per start.
CoveringResult minimize_hull_area(const CoveringInstance& instance, int n_starts,
                                  std::uint64_t seed);

// The z-parametrized container instance behind the trapezoid covering
// proposition: two triangles and a vertical segment whose minimal convex
// hull of translates is the square of area 2.
CoveringInstance trapezoid_instance(double z);

struct CaseSampleReport {
    std::string order;          // one of dlr, lrd, ldr, rld, drl, rdl
    long samples = 0;
    long bound_violations = 0;  // hull area < printed bound - 1e-9
    double min_margin = 0.0;    // min over samples of (hull - bound)
    double min_bound = 0.0;     // min printed bound over the sampled range
};

struct TrapezoidCaseReport {
    std::vector<CaseSampleReport> cases;
    double square_configuration_area = 0.0;  // exactly 2 at the minimizer
    bool all_bounds_hold = false;
};

// Certifies the per-case lower bounds of the covering proposition at the
// given z by sampling arrangements within each vertical-line order.
TrapezoidCaseReport trapezoid_case_certify(double z);

struct SweepRow {
    double a1 = 0.0;
    double a2 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double best_area = 0.0;
    double gap = 0.0;  // best_area - reference (1 = unit square)
    bool flagged = false;
};

// Sweeps valid non-trapezoid (a1, a2) over a grid x grid lattice of the
// points (i/(grid+1), j/(grid+1)), builds each +-lambda J Delta instance,
// and runs minimize_hull_area. Rows with gap < -1e-4 are flagged as
// conjecture-counterexample candidates. Numerical evidence only.
std::vector<SweepRow> conjecture_sweep(int grid, int n_starts, std::uint64_t seed);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace ehz
