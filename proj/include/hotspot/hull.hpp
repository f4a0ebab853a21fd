#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "hotspot/geo.hpp"

namespace hotspot {

inline double cross(const PlanarPoint& o, const PlanarPoint& a, const PlanarPoint& b) noexcept {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Andrew's monotone chain. Counter-clockwise, first vertex not repeated,
/// collinear points dropped. Fewer than 3 vertices means the input is a
/// point or a segment.
inline std::vector<PlanarPoint> convex_hull(std::vector<PlanarPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const PlanarPoint& a, const PlanarPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    std::vector<PlanarPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

/// Convex hull that is always a proper polygon: point and segment hulls are
/// buffered by `buffer` meters.
inline std::vector<PlanarPoint> polygon_hull(std::span<const PlanarPoint> members, double buffer = 10.0) {
    auto hull = convex_hull({members.begin(), members.end()});
    if (hull.size() >= 3) return hull;
    constexpr int kSegments = 16;
    std::vector<PlanarPoint> ring;
    for (const auto& p : hull) {
        for (int s = 0; s < kSegments; ++s) {
            const double a = 2.0 * std::numbers::pi * s / kSegments;
            ring.push_back({p.x + buffer * std::cos(a), p.y + buffer * std::sin(a)});
        }
    }
    return convex_hull(std::move(ring));
}

/// Inside-or-on test for a counter-clockwise convex polygon, with a small
/// absolute tolerance in meters.
inline bool contains(std::span<const PlanarPoint> ccw_hull, const PlanarPoint& p, double tol = 1e-6) {
    const std::size_t n = ccw_hull.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = ccw_hull[i];
        const auto& b = ccw_hull[(i + 1) % n];
        const double len = distance(a, b);
        if (len == 0.0) continue;
        if (cross(a, b, p) / len < -tol) return false;
    }
    return true;
}

}  // namespace hotspot
