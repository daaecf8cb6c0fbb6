#pragma once

#include <random>
#include <vector>

#include "ehz/geom2d.hpp"

namespace ehz::testutil {

inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int n_points = 10,
                                           double radius = 1.0) {
    std::uniform_real_distribution<double> uni(-radius, radius);
    for (;;) {
        std::vector<Vec2> pts;
        pts.reserve(static_cast<std::size_t>(n_points));
        for (int i = 0; i < n_points; ++i) pts.push_back({uni(rng), uni(rng)});
        try {
            ConvexPolygon hull = convex_hull(pts);
            if (!hull.degenerate() && hull.area() > 0.1 * radius * radius) return hull;
        } catch (const Error&) {
        }
    }
}

inline ConvexPolygon random_polygon_containing_origin(std::mt19937_64& rng, int n_points = 10,
                                                      double radius = 1.0) {
    for (;;) {
        ConvexPolygon P = random_convex_polygon(rng, n_points, radius);
        P = P.translated(-P.centroid());
        if (P.strictly_contains({0.0, 0.0}, 1e-6)) return P;
    }
}

inline ConvexPolygon random_triangle(std::mt19937_64& rng, double min_area = 0.05) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (;;) {
        std::vector<Vec2> pts = {{uni(rng), uni(rng)}, {uni(rng), uni(rng)}, {uni(rng), uni(rng)}};
        try {
            ConvexPolygon tri(pts);
            if (tri.size() == 3 && tri.area() >= min_area) return tri;
        } catch (const Error&) {
        }
    }
}

inline ConvexPolygon regular_ngon(int n, double circumradius, Vec2 center = {0.0, 0.0}) {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * 3.141592653589793 * i / n;
        pts.push_back(center + circumradius * Vec2{std::cos(t), std::sin(t)});
    }
    return ConvexPolygon(pts);
}

inline ConvexPolygon unit_square() {
    return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

inline ConvexPolygon square(double side, Vec2 lower_left = {0.0, 0.0}) {
    return ConvexPolygon({lower_left,
                          lower_left + Vec2{side, 0.0},
                          lower_left + Vec2{side, side},
                          lower_left + Vec2{0.0, side}});
}

}  // namespace ehz::testutil
