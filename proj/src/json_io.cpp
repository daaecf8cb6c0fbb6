#include "ehz/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace ehz {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json point_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorKind::ParseError, "point must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorKind::ParseError, "invalid JSON");
    return j;
}

}  // namespace

ConvexPolygon polygon_from_json_text(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw Error(ErrorKind::ParseError, "missing field: vertices");
    std::vector<Vec2> pts;
    for (const json& v : j["vertices"]) pts.push_back(point_from_json(v));
    if (pts.size() < 2) throw Error(ErrorKind::ParseError, "vertices: need at least 2 points");
    // The constructor normalizes orientation and strips collinear points;
    // fall back to the hull for unordered input.
    try {
        return ConvexPolygon(pts);
    } catch (const Error&) {
        return convex_hull(pts);
    }
}

ConvexPolygon read_polygon_file(const std::string& path) {
    return polygon_from_json_text(read_text_file(path));
}

std::string polygon_to_json_text(const ConvexPolygon& P) {
    std::ostringstream os;
    os << "{\"vertices\": [";
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (i) os << ", ";
        os << "[" << fmt17(P[i].x) << ", " << fmt17(P[i].y) << "]";
    }
    os << "]}";
    return os.str();
}

QuadParams quad_params_from_json_text(const std::string& text) {
    const json j = parse(text);
    QuadParams p;
    const auto get = [&](const char* name, double* out) {
        if (!j.contains(name) || !j[name].is_number())
            throw Error(ErrorKind::ParseError, std::string("missing field: ") + name);
        *out = j[name].get<double>();
    };
    get("alpha", &p.alpha);
    get("beta", &p.beta);
    get("a1", &p.a1);
    get("a2", &p.a2);
    get("d1", &p.d1);
    get("d2", &p.d2);
    get("c1", &p.c1);
    get("c2", &p.c2);
    validate(p);
    return p;
}

std::string quad_params_to_json_text(const QuadParams& p) {
    std::ostringstream os;
    os << "{\"alpha\": " << fmt17(p.alpha) << ", \"beta\": " << fmt17(p.beta)
       << ", \"a1\": " << fmt17(p.a1) << ", \"a2\": " << fmt17(p.a2)
       << ", \"d1\": " << fmt17(p.d1) << ", \"d2\": " << fmt17(p.d2)
       << ", \"c1\": " << fmt17(p.c1) << ", \"c2\": " << fmt17(p.c2) << "}";
    return os.str();
}

std::string capacity_result_to_json_text(const CapacityResult& r) {
    std::ostringstream os;
    os << "{\"value\": " << fmt17(r.value) << ", \"dual_value\": " << fmt17(r.dual_value)
       << ", \"solver\": \"" << solver_name(r.solver) << "\", \"curve\": [";
    for (std::size_t i = 0; i < r.optimizer_curve.vertices.size(); ++i) {
        if (i) os << ", ";
        const Vec2 v = r.optimizer_curve.vertices[i];
        os << "[" << fmt17(v.x) << ", " << fmt17(v.y) << "]";
    }
    os << "], \"resolution\": " << r.grid_resolution << "}";
    return os.str();
}

std::string systolic_report_to_json_text(const SystolicReport& r) {
    std::ostringstream os;
    os << "{\"capacity\": " << fmt17(r.capacity)
       << ", \"volume_product\": " << fmt17(r.volume_product)
       << ", \"ratio\": " << fmt17(r.ratio)
       << ", \"is_equality\": " << (r.is_equality ? "true" : "false") << "}";
    return os.str();
}

std::string trajectory_to_json_text(const BilliardTrajectory& t) {
    std::ostringstream os;
    os << "{\"states\": [";
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        if (i) os << ", ";
        const BilliardState& s = t.states[i];
        os << "{\"q\": [" << fmt17(s.q.x) << ", " << fmt17(s.q.y) << "], \"p\": ["
           << fmt17(s.p.x) << ", " << fmt17(s.p.y) << "]}";
    }
    os << "], \"closed\": " << (t.closed ? "true" : "false")
       << ", \"bounce_count\": " << t.bounce_count
       << ", \"length_T\": " << fmt17(t.length_T)
       << ", \"length_K_dual\": " << fmt17(t.length_K_dual) << "}";
    return os.str();
}

std::string map_chain_to_json_text(const std::vector<AffineMap2>& chain) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) os << ", ";
        const AffineMap2& m = chain[i];
        os << "{\"matrix\": [[" << fmt17(m.m[0][0]) << ", " << fmt17(m.m[0][1]) << "], ["
           << fmt17(m.m[1][0]) << ", " << fmt17(m.m[1][1]) << "]], \"shift\": ["
           << fmt17(m.shift.x) << ", " << fmt17(m.shift.y) << "]}";
    }
    os << "]";
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::ParseError, "cannot write file: " + tmp);
        out << content;
        if (!out.good()) throw Error(ErrorKind::ParseError, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error(ErrorKind::ParseError, "rename failed: " + path);
    }
}

namespace {

struct ViewBox {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(Vec2 v) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
};

}  // namespace

std::string render_svg(const ConvexPolygon* K, const ConvexPolygon* T,
                       const BilliardTrajectory* traj) {
    constexpr double kSize = 800.0;
    constexpr double kMargin = 60.0;
    ViewBox box;
    if (K) for (const Vec2& v : K->vertices()) box.add(v);
    if (T) for (const Vec2& v : T->vertices()) box.add(v);
    if (traj)
        for (const BilliardState& s : traj->states) {
            box.add(s.q);
            box.add(s.p);
        }
    if (!(box.max_x > box.min_x) || !(box.max_y > box.min_y)) {
        box = ViewBox{};
        box.add({-1.0, -1.0});
        box.add({1.0, 1.0});
    }
    const double scale = (kSize - 2.0 * kMargin) /
                         std::max(box.max_x - box.min_x, box.max_y - box.min_y);
    const auto tx = [&](Vec2 v) {
        return Vec2{kMargin + (v.x - box.min_x) * scale,
                    kSize - kMargin - (v.y - box.min_y) * scale};
    };
    const auto poly_path = [&](const std::vector<Vec2>& pts, bool close) {
        std::ostringstream os;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Vec2 v = tx(pts[i]);
            os << (i == 0 ? "M " : "L ") << fmt17(v.x) << " " << fmt17(v.y) << " ";
        }
        if (close) os << "Z";
        return os.str();
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
          "viewBox=\"0 0 800 800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    if (K)
        os << "<path d=\"" << poly_path(K->vertices(), true)
           << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    if (T)
        os << "<path d=\"" << poly_path(T->vertices(), true)
           << "\" fill=\"none\" stroke=\"gray\" stroke-width=\"2\"/>\n";
    if (traj && traj->states.size() >= 2) {
        std::vector<Vec2> qs, ps;
        for (const BilliardState& s : traj->states) {
            qs.push_back(s.q);
            ps.push_back(s.p);
        }
        os << "<path d=\"" << poly_path(qs, false)
           << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
        os << "<path d=\"" << poly_path(ps, false)
           << "\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\"/>\n";
    }
    os << "<g font-family=\"sans-serif\" font-size=\"14\">\n";
    double ly = 20.0;
    const auto legend = [&](const char* color, const char* label) {
        os << "<rect x=\"12\" y=\"" << ly - 10 << "\" width=\"18\" height=\"4\" fill=\"" << color
           << "\"/><text x=\"36\" y=\"" << ly - 4 << "\">" << label << "</text>\n";
        ly += 20.0;
    };
    if (K) legend("black", "K");
    if (T) legend("gray", "T");
    if (traj) {
        legend("red", "q-path");
        legend("blue", "p-path");
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace ehz
