#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/spatial_index.hpp"

namespace hotspot {

struct NnSummary {
    double mean = 0.0;
    double sd = 0.0;
};

inline NnSummary summarize(std::span<const double> v) {
    NnSummary s;
    if (v.empty()) return s;
    for (double d : v) s.mean += d;
    s.mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double d : v) ss += (d - s.mean) * (d - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size()));
    return s;
}

/// Ids whose nearest-neighbor distance exceeds mean + 3 SD of all
/// nearest-neighbor distances. Only used to calibrate the distance band.
inline std::vector<PointId> locational_outliers(const SpatialIndex& index) {
    if (index.size() < 4) throw Error(ErrorCode::InsufficientPoints, "outlier test needs at least 4 points");
    const auto nn = index.nearest_neighbor_distances();
    const auto s = summarize(nn);
    // Relative slack absorbs rounding when all distances are equal.
    const double threshold = s.mean + 3.0 * s.sd + 1e-9 * s.mean;
    std::vector<PointId> out;
    for (PointId i = 0; i < nn.size(); ++i) {
        if (nn[i] > threshold) out.push_back(i);
    }
    return out;
}

inline std::vector<PointId> locational_outliers(std::span<const PlanarPoint> points) {
    if (points.size() < 4) throw Error(ErrorCode::InsufficientPoints, "outlier test needs at least 4 points");
    const SpatialIndex index = SpatialIndex::with_spacing_cells({points.begin(), points.end()});
    return locational_outliers(index);
}

}  // namespace hotspot
