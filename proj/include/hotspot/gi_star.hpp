#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/moments.hpp"
#include "hotspot/neighbor_graph.hpp"
#include "hotspot/normal.hpp"

namespace hotspot {

struct GiResult {
    PointId point_id = 0;
    double z = 0.0;
    double p_two_sided = 1.0;
    int bin = 0;  // -3..3, filled by classify()
    std::size_t neighbor_count = 0;
};

struct GiStarOutput {
    std::vector<GiResult> points;
    std::vector<Warning> warnings;
    std::size_t all_neighbor_points = 0;  // points whose neighborhood is the whole dataset
};

/// Getis-Ord Gi* z-scores over binary fixed-band weights with the focal
/// point included in its own neighborhood.
///
/// With W = neighbor count, n points, mean X and population SD S:
///   z = (sum_j x_j - X W) / (S sqrt((n W - W^2) / (n - 1)))
/// A point whose neighborhood is every point has zero denominator; its z is
/// set to 0 and an AllNeighbors warning is attached.
inline GiStarOutput gi_star(std::span<const double> values, const NeighborGraph& graph) {
    if (!graph.include_self()) throw Error(ErrorCode::InputMismatch, "Gi* needs a graph that includes self");
    if (graph.size() != values.size()) throw Error(ErrorCode::InputMismatch, "graph and values differ in length");
    if (values.size() < 2) throw Error(ErrorCode::InsufficientPoints, "Gi* needs at least 2 points");
    const Centered c = center(values);
    const double n = static_cast<double>(values.size());
    const double s = std::sqrt(c.m2 / n);

    GiStarOutput out;
    out.points.reserve(values.size());
    for (PointId i = 0; i < values.size(); ++i) {
        const auto& nbrs = graph.neighbors(i);
        double local = 0.0;
        for (PointId j : nbrs) local += c.dev[j];
        const double w = static_cast<double>(nbrs.size());

        GiResult r;
        r.point_id = i;
        r.neighbor_count = nbrs.size();
        const double spread = n * w - w * w;
        if (spread <= 0.0) {
            ++out.all_neighbor_points;
            r.z = 0.0;
        } else {
            r.z = local / (s * std::sqrt(spread / (n - 1.0)));
        }
        r.p_two_sided = two_sided_p(r.z);
        out.points.push_back(r);
    }
    if (out.all_neighbor_points > 0) out.warnings.push_back(Warning::AllNeighbors);
    return out;
}

}  // namespace hotspot
