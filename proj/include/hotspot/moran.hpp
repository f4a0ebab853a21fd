#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/moments.hpp"
#include "hotspot/neighbor_graph.hpp"
#include "hotspot/normal.hpp"

namespace hotspot {

struct MoranResult {
    double distance = 0.0;
    double index = 0.0;  // Moran's I
    double expected = 0.0;
    double variance = 0.0;
    double z = 0.0;
    double p_two_sided = 1.0;
};

namespace detail {

/// Global Moran's I over symmetric binary weights. `for_neighbors(i, fn)`
/// must call fn(j) once for every j != i within the band.
template <typename ForNeighbors>
MoranResult morans_i_symmetric(const Centered& c, double distance, ForNeighbors&& for_neighbors) {
    const std::size_t count = c.dev.size();
    if (count < 4) throw Error(ErrorCode::InsufficientPoints, "Moran's I needs at least 4 points");
    const double n = static_cast<double>(count);

    double cross = 0.0;
    double s0 = 0.0;
    double sum_deg2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double lag = 0.0;
        double deg = 0.0;
        for_neighbors(i, [&](std::size_t j) {
            lag += c.dev[j];
            deg += 1.0;
        });
        cross += c.dev[i] * lag;
        s0 += deg;
        sum_deg2 += deg * deg;
    }
    if (s0 == 0.0) throw Error(ErrorCode::NoNeighbors, "no point has a neighbor within the band");

    // For symmetric 0/1 weights: S1 = 2 S0 and S2 = sum_i (2 deg_i)^2.
    const double s1 = 2.0 * s0;
    const double s2 = 4.0 * sum_deg2;
    const double b2 = n * c.m4 / (c.m2 * c.m2);

    MoranResult r;
    r.distance = distance;
    r.index = (n / s0) * cross / c.m2;
    r.expected = -1.0 / (n - 1.0);
    const double a = n * ((n * n - 3.0 * n + 3.0) * s1 - n * s2 + 3.0 * s0 * s0);
    const double b = b2 * ((n * n - n) * s1 - 2.0 * n * s2 + 6.0 * s0 * s0);
    const double e2 = (a - b) / ((n - 1.0) * (n - 2.0) * (n - 3.0) * s0 * s0);
    r.variance = e2 - r.expected * r.expected;
    if (!(r.variance > 0.0)) {
        throw Error(ErrorCode::DegenerateValues, "non-positive variance of Moran's I");
    }
    r.z = (r.index - r.expected) / std::sqrt(r.variance);
    r.p_two_sided = two_sided_p(r.z);
    return r;
}

}  // namespace detail

/// Global Moran's I with the randomization-assumption variance. The graph
/// must exclude self-neighbors.
inline MoranResult morans_i(std::span<const double> values, const NeighborGraph& graph) {
    if (graph.include_self()) throw Error(ErrorCode::InputMismatch, "Moran's I needs a graph without self-neighbors");
    if (graph.size() != values.size()) throw Error(ErrorCode::InputMismatch, "graph and values differ in length");
    if (values.size() < 4) throw Error(ErrorCode::InsufficientPoints, "Moran's I needs at least 4 points");
    const Centered c = center(values);
    return detail::morans_i_symmetric(c, graph.band(), [&](std::size_t i, auto&& fn) {
        for (PointId j : graph.neighbors(i)) fn(j);
    });
}

}  // namespace hotspot
