// Independent reference implementations used only by tests. Nothing here
// touches SpatialIndex or NeighborGraph: weights come from dense O(n^2)
// distance scans and statistics from their textbook definitions.
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hotspot/geo.hpp"

namespace oracle {

using hotspot::GeoPoint;
using hotspot::PlanarPoint;

inline double haversine(const GeoPoint& a, const GeoPoint& b) {
    constexpr double deg = std::numbers::pi / 180.0;
    const double dlat = (b.lat - a.lat) * deg;
    const double dlon = (b.lon - a.lon) * deg;
    const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(a.lat * deg) * std::cos(b.lat * deg) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2.0 * 6'371'000.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

inline double dist(const PlanarPoint& a, const PlanarPoint& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
}

inline std::vector<std::size_t> brute_radius(const std::vector<PlanarPoint>& pts, std::size_t i, double r) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (dist(pts[i], pts[j]) <= r) out.push_back(j);
    }
    return out;
}

inline std::vector<double> brute_nn(const std::vector<PlanarPoint>& pts) {
    std::vector<double> out(pts.size(), INFINITY);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i != j) out[i] = std::min(out[i], dist(pts[i], pts[j]));
        }
    }
    return out;
}

/// Dense binary weight matrix, w(i,j) = 1 iff dist <= band.
inline std::vector<std::vector<double>> dense_weights(const std::vector<PlanarPoint>& pts, double band,
                                                      bool include_self) {
    const std::size_t n = pts.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j && !include_self) continue;
            if (dist(pts[i], pts[j]) <= band) w[i][j] = 1.0;
        }
    }
    return w;
}

/// Gi* z-scores straight from the formula with population SD.
inline std::vector<double> gi_star(const std::vector<double>& x, const std::vector<std::vector<double>>& w) {
    const double n = static_cast<double>(x.size());
    double sum = 0.0, sum2 = 0.0;
    for (double v : x) sum += v;
    const double mean = sum / n;
    for (double v : x) sum2 += (v - mean) * (v - mean);
    const double s = std::sqrt(sum2 / n);
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double wx = 0.0, wsum = 0.0, w2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            wx += w[i][j] * x[j];
            wsum += w[i][j];
            w2 += w[i][j] * w[i][j];
        }
        const double denom = s * std::sqrt((n * w2 - wsum * wsum) / (n - 1.0));
        z[i] = denom == 0.0 ? 0.0 : (wx - mean * wsum) / denom;
    }
    return z;
}

struct Moran {
    double index;
    double expected;
    double variance;
    double z;
};

/// Moran's I and its randomization variance from dense weights, with
/// S1 and S2 taken from their general (not symmetric-binary) definitions.
inline Moran morans_i(const std::vector<double>& x, const std::vector<std::vector<double>>& w) {
    const std::size_t count = x.size();
    const double n = static_cast<double>(count);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0, m4 = 0.0, cross = 0.0, s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double di = x[i] - mean;
        m2 += di * di;
        m4 += di * di * di * di;
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            cross += w[i][j] * di * (x[j] - mean);
            s0 += w[i][j];
            s1 += 0.5 * (w[i][j] + w[j][i]) * (w[i][j] + w[j][i]);
            row += w[i][j];
            col += w[j][i];
        }
        s2 += (row + col) * (row + col);
    }
    Moran r;
    r.index = (n / s0) * cross / m2;
    r.expected = -1.0 / (n - 1.0);
    const double b2 = n * m4 / (m2 * m2);
    const double num = n * ((n * n - 3 * n + 3) * s1 - n * s2 + 3 * s0 * s0) -
                       b2 * ((n * n - n) * s1 - 2 * n * s2 + 6 * s0 * s0);
    r.variance = num / ((n - 1) * (n - 2) * (n - 3) * s0 * s0) - r.expected * r.expected;
    r.z = (r.index - r.expected) / std::sqrt(r.variance);
    return r;
}

/// Moran's I only (for permutation sampling), with precomputed neighbor lists.
inline double moran_index(const std::vector<double>& x, const std::vector<std::vector<std::size_t>>& adj,
                          double s0) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double di = x[i] - mean;
        m2 += di * di;
        for (std::size_t j : adj[i]) cross += di * (x[j] - mean);
    }
    return (n / s0) * cross / m2;
}

inline std::vector<PlanarPoint> random_points(std::mt19937_64& rng, std::size_t n, double extent) {
    std::uniform_real_distribution<double> u(0.0, extent);
    std::vector<PlanarPoint> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

inline std::vector<double> random_normals(std::mt19937_64& rng, std::size_t n, double mean = 0.0, double sd = 1.0) {
    std::normal_distribution<double> d(mean, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace oracle
