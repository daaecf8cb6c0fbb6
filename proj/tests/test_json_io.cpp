#include <doctest.h>

#include <cstdio>

#include "ehz/json_io.hpp"
#include "test_util.hpp"

using namespace ehz;
using namespace ehz::testutil;

TEST_CASE("polygon JSON round trip normalizes orientation") {
    const std::string text = "{\"vertices\": [[0,0],[0,1],[1,1],[1,0]]}";  // clockwise input
    const ConvexPolygon P = polygon_from_json_text(text);
    CHECK(P.area() == doctest::Approx(1.0));
    const std::string out = polygon_to_json_text(P);
    const ConvexPolygon Q = polygon_from_json_text(out);
    CHECK(same_cyclic(P, Q, 1e-15));
}

TEST_CASE("polygon JSON strips collinear points and rejects junk") {
    const ConvexPolygon P =
        polygon_from_json_text("{\"vertices\": [[0,0],[0.5,0],[1,0],[1,1],[0,1]]}");
    CHECK(P.size() == 4);
    CHECK_THROWS_AS(polygon_from_json_text("{\"vertices\": [[0,0]]}"), Error);
    CHECK_THROWS_AS(polygon_from_json_text("{}"), Error);
    CHECK_THROWS_AS(polygon_from_json_text("not json"), Error);
}

TEST_CASE("quad params JSON round trip") {
    QuadParams p;
    p.alpha = 0.25;
    p.beta = 1.5;
    p.a1 = 0.3;
    p.a2 = 0.6;
    p.d1 = 2.0;
    p.d2 = 0.5;
    p.c1 = -1.0;
    p.c2 = 0.25;
    const QuadParams q = quad_params_from_json_text(quad_params_to_json_text(p));
    CHECK(q.alpha == p.alpha);
    CHECK(q.d2 == p.d2);
    CHECK_THROWS_AS(quad_params_from_json_text("{\"alpha\": 0}"), Error);
}

TEST_CASE("atomic write leaves no partial file behind") {
    const std::string path = "/tmp/ehz_test_out.json";
    write_text_atomic(path, "{\"ok\": true}");
    CHECK(read_text_file(path) == "{\"ok\": true}");
    std::remove(path.c_str());
}

TEST_CASE("svg output has the fixed palette") {
    const ConvexPolygon K = unit_square();
    const std::string svg = render_svg(&K, nullptr, nullptr);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("width=\"800\" height=\"800\"") != std::string::npos);
    CHECK(svg.find("stroke=\"black\"") != std::string::npos);
}
