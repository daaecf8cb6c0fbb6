#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ehz/capacity.hpp"
#include "ehz/dynamics.hpp"
#include "ehz/equality_cases.hpp"
#include "ehz/geom2d.hpp"
#include "ehz/symplecto.hpp"

namespace ehz {

// Polygon schema {"vertices": [[x, y], ...]}; the reader normalizes the
// orientation to counterclockwise and strips collinear vertices, the writer
// emits 17 significant digits.
ConvexPolygon polygon_from_json_text(const std::string& text);
ConvexPolygon read_polygon_file(const std::string& path);
std::string polygon_to_json_text(const ConvexPolygon& P);

QuadParams quad_params_from_json_text(const std::string& text);
std::string quad_params_to_json_text(const QuadParams& p);

std::string capacity_result_to_json_text(const CapacityResult& r);
std::string systolic_report_to_json_text(const SystolicReport& r);
std::string trajectory_to_json_text(const BilliardTrajectory& t);
std::string map_chain_to_json_text(const std::vector<AffineMap2>& chain);

std::string read_text_file(const std::string& path);
// write-then-rename so failures never leave partial artifacts
void write_text_atomic(const std::string& path, const std::string& content);

// Fixed-size 800x800 SVG with uniform world-to-view scaling and a legend:
// K outline black, q-path red, T outline gray, p-path blue.
std::string render_svg(const ConvexPolygon* K, const ConvexPolygon* T,
                       const BilliardTrajectory* traj);

}  // namespace ehz
