#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "hotspot/error.hpp"

namespace hotspot {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// WGS84 position in degrees.
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    [[nodiscard]] bool valid() const noexcept {
        return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
               lon >= -180.0 && lon <= 180.0;
    }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Meters east (x) and north (y) of a projection origin.
struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

inline double distance(const PlanarPoint& a, const PlanarPoint& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const PlanarPoint& a, const PlanarPoint& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Spherical azimuthal equidistant projection about a fixed origin (R = 6,371 km).
/// Distances from the origin are exact; pairwise distances stay within ~1e-5
/// relative error at city scale, where a plain equirectangular scale drifts
/// by tan(lat) times the latitude offset.
class Projection {
public:
    explicit Projection(GeoPoint origin)
        : origin_(origin), sin_lat0_(std::sin(origin.lat * kDeg)), cos_lat0_(std::cos(origin.lat * kDeg)) {}

    [[nodiscard]] const GeoPoint& origin() const noexcept { return origin_; }

    [[nodiscard]] PlanarPoint forward(const GeoPoint& g) const noexcept {
        const double lat = g.lat * kDeg;
        const double dlon = (g.lon - origin_.lon) * kDeg;
        const double sin_lat = std::sin(lat), cos_lat = std::cos(lat);
        // Angular distance from the origin via the haversine form (stable for small c).
        const double h = std::sin((lat - origin_.lat * kDeg) / 2) * std::sin((lat - origin_.lat * kDeg) / 2) +
                         cos_lat0_ * cos_lat * std::sin(dlon / 2) * std::sin(dlon / 2);
        const double c = 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
        const double k = c < 1e-9 ? 1.0 : c / std::sin(c);
        return {kEarthRadiusM * k * cos_lat * std::sin(dlon),
                kEarthRadiusM * k * (cos_lat0_ * sin_lat - sin_lat0_ * cos_lat * std::cos(dlon))};
    }

    [[nodiscard]] GeoPoint inverse(const PlanarPoint& p) const noexcept {
        const double rho = std::hypot(p.x, p.y);
        if (rho == 0.0) return origin_;
        const double c = rho / kEarthRadiusM;
        const double sin_c = std::sin(c), cos_c = std::cos(c);
        const double lat = std::asin(std::clamp(cos_c * sin_lat0_ + p.y * sin_c * cos_lat0_ / rho, -1.0, 1.0));
        const double dlon = std::atan2(p.x * sin_c, rho * cos_lat0_ * cos_c - p.y * sin_lat0_ * sin_c);
        return {lat / kDeg, origin_.lon + dlon / kDeg};
    }

private:
    static constexpr double kDeg = std::numbers::pi / 180.0;
    GeoPoint origin_;
    double sin_lat0_;
    double cos_lat0_;
};

/// Arithmetic mean of latitudes and longitudes.
inline GeoPoint centroid(std::span<const GeoPoint> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyDataset, "no points to average");
    double lat = 0.0;
    double lon = 0.0;
    for (const auto& p : points) {
        lat += p.lat;
        lon += p.lon;
    }
    const auto n = static_cast<double>(points.size());
    return {lat / n, lon / n};
}

struct ProjectedPoints {
    std::vector<PlanarPoint> points;
    Projection projection;
};

/// Projects all points about their centroid.
inline ProjectedPoints project(std::span<const GeoPoint> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyDataset, "cannot project an empty point set");
    for (const auto& p : points) {
        if (!p.valid()) throw Error(ErrorCode::InvalidInput, "coordinate out of WGS84 bounds");
    }
    Projection proj(centroid(points));
    std::vector<PlanarPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(proj.forward(p));
    return {std::move(out), proj};
}

}  // namespace hotspot
