#pragma once

#include <algorithm>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/spatial_index.hpp"

namespace hotspot {

/// Fixed-distance-band binary weights: w(i, j) = 1 iff dist(i, j) <= band.
/// Neighbor lists are sorted ascending and symmetric.
class NeighborGraph {
public:
    NeighborGraph(double band, bool include_self, std::vector<std::vector<PointId>> neighbors)
        : band_(band), include_self_(include_self), neighbors_(std::move(neighbors)) {}

    [[nodiscard]] double band() const noexcept { return band_; }
    [[nodiscard]] bool include_self() const noexcept { return include_self_; }
    [[nodiscard]] std::size_t size() const noexcept { return neighbors_.size(); }
    [[nodiscard]] const std::vector<PointId>& neighbors(PointId i) const { return neighbors_.at(i); }

    /// Total number of nonzero weights (ordered pairs, plus self-loops when included).
    [[nodiscard]] std::size_t weight_sum() const noexcept {
        std::size_t s = 0;
        for (const auto& n : neighbors_) s += n.size();
        return s;
    }

private:
    double band_;
    bool include_self_;
    std::vector<std::vector<PointId>> neighbors_;
};

/// Self is included for Gi* and excluded for Moran's I.
inline NeighborGraph build_graph(const SpatialIndex& index, double band, bool include_self) {
    if (!(band > 0.0) || !std::isfinite(band)) throw Error(ErrorCode::InvalidBand, "distance band must be positive");
    std::vector<std::vector<PointId>> lists(index.size());
    for (PointId i = 0; i < index.size(); ++i) {
        auto& list = lists[i];
        index.visit_within(index.point(i), band, [&](PointId j) {
            if (include_self || j != i) list.push_back(j);
        });
        std::sort(list.begin(), list.end());
    }
    return NeighborGraph(band, include_self, std::move(lists));
}

}  // namespace hotspot
