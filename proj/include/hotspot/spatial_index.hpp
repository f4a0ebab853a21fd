#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/geo.hpp"

namespace hotspot {

using PointId = std::size_t;

/// Uniform-grid bucket index over planar points. Immutable after
/// construction, so concurrent queries are safe.
class SpatialIndex {
public:
    SpatialIndex(std::vector<PlanarPoint> points, double cell_size)
        : points_(std::move(points)), cell_size_(cell_size) {
        if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
            throw Error(ErrorCode::InvalidConfig, "cell size must be positive and finite");
        }
        cell_of_.reserve(points_.size());
        for (PointId i = 0; i < points_.size(); ++i) {
            const Cell c = cell_for(points_[i]);
            cell_of_.push_back(c);
            cells_[key(c)].push_back(i);
            if (i == 0) {
                lo_ = hi_ = c;
            } else {
                lo_.cx = std::min(lo_.cx, c.cx);
                lo_.cy = std::min(lo_.cy, c.cy);
                hi_.cx = std::max(hi_.cx, c.cx);
                hi_.cy = std::max(hi_.cy, c.cy);
            }
        }
    }

    /// Cell size from the expected point spacing sqrt(area / n) of the bounding box.
    static SpatialIndex with_spacing_cells(std::vector<PlanarPoint> points) {
        const double cell = spacing_cell_size(points);
        return SpatialIndex(std::move(points), cell);
    }

    static double spacing_cell_size(std::span<const PlanarPoint> points) {
        if (points.empty()) return 1.0;
        double min_x = points[0].x, max_x = points[0].x;
        double min_y = points[0].y, max_y = points[0].y;
        for (const auto& p : points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        const double w = max_x - min_x;
        const double h = max_y - min_y;
        const double side = std::max({w, h, 1.0});
        const double area = std::max(w * h, side);
        return std::max(1.0, std::sqrt(area / static_cast<double>(points.size())));
    }

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] double cell_size() const noexcept { return cell_size_; }
    [[nodiscard]] std::span<const PlanarPoint> points() const noexcept { return points_; }
    [[nodiscard]] const PlanarPoint& point(PointId i) const { return points_.at(i); }
    [[nodiscard]] std::size_t occupied_cells() const noexcept { return cells_.size(); }

    /// All ids j with planar distance(i, j) <= r, ascending. Includes i.
    [[nodiscard]] std::vector<PointId> radius_query(PointId i, double r) const {
        if (i >= points_.size()) throw Error(ErrorCode::IdOutOfRange, "point id out of range");
        return radius_query(points_[i], r);
    }

    /// All ids within r of an arbitrary location, ascending.
    [[nodiscard]] std::vector<PointId> radius_query(const PlanarPoint& center, double r) const {
        if (!(r >= 0.0)) throw Error(ErrorCode::InvalidBand, "query radius must be non-negative");
        std::vector<PointId> out;
        visit_within(center, r, [&](PointId j) { out.push_back(j); });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Calls fn(j) for each j within r of center, in unspecified order.
    template <typename Fn>
    void visit_within(const PlanarPoint& center, double r, Fn&& fn) const {
        const double r2 = r * r;
        auto scan = [&](const std::vector<PointId>& bucket) {
            for (PointId j : bucket) {
                if (squared_distance(center, points_[j]) <= r2) fn(j);
            }
        };
        const double span = std::floor(2.0 * r / cell_size_) + 2.0;
        if (!std::isfinite(span) || span * span > static_cast<double>(cells_.size())) {
            for (const auto& [k, bucket] : cells_) scan(bucket);
            return;
        }
        const Cell c0 = cell_for({center.x - r, center.y - r});
        const Cell c1 = cell_for({center.x + r, center.y + r});
        for (std::int64_t cx = std::max(c0.cx, lo_.cx); cx <= std::min(c1.cx, hi_.cx); ++cx) {
            for (std::int64_t cy = std::max(c0.cy, lo_.cy); cy <= std::min(c1.cy, hi_.cy); ++cy) {
                if (auto it = cells_.find(key({cx, cy})); it != cells_.end()) scan(it->second);
            }
        }
    }

    /// Distance from each point to its nearest other point (0 for duplicates).
    [[nodiscard]] std::vector<double> nearest_neighbor_distances() const {
        if (points_.size() < 2) {
            throw Error(ErrorCode::InsufficientPoints, "nearest-neighbor distances need at least 2 points");
        }
        const std::int64_t max_ring =
            std::max(hi_.cx - lo_.cx, hi_.cy - lo_.cy) + 1;
        std::vector<double> out(points_.size());
        for (PointId i = 0; i < points_.size(); ++i) {
            const Cell c = cell_of_[i];
            double best2 = std::numeric_limits<double>::infinity();
            const double full_scan_cost = static_cast<double>(cells_.size() + points_.size());
            for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
                // Sparse surroundings (far outliers): a flat scan is cheaper than more rings.
                const double side = static_cast<double>(2 * ring + 1);
                if (side * side > full_scan_cost) {
                    for (PointId j = 0; j < points_.size(); ++j) {
                        if (j != i) best2 = std::min(best2, squared_distance(points_[i], points_[j]));
                    }
                    break;
                }
                for_ring(c, ring, [&](const std::vector<PointId>& bucket) {
                    for (PointId j : bucket) {
                        if (j == i) continue;
                        best2 = std::min(best2, squared_distance(points_[i], points_[j]));
                    }
                });
                // Anything in ring + 1 or beyond is at least ring * cell_size away.
                const double reach = static_cast<double>(ring) * cell_size_;
                if (best2 <= reach * reach) break;
            }
            out[i] = std::sqrt(best2);
        }
        return out;
    }

private:
    struct Cell {
        std::int64_t cx = 0;
        std::int64_t cy = 0;
    };

    [[nodiscard]] Cell cell_for(const PlanarPoint& p) const noexcept {
        return {static_cast<std::int64_t>(std::floor(p.x / cell_size_)),
                static_cast<std::int64_t>(std::floor(p.y / cell_size_))};
    }

    static std::uint64_t key(const Cell& c) noexcept {
        return (static_cast<std::uint64_t>(c.cx) << 32) ^ (static_cast<std::uint64_t>(c.cy) & 0xffffffffULL);
    }

    template <typename Fn>
    void for_ring(const Cell& c, std::int64_t ring, Fn&& fn) const {
        auto visit = [&](std::int64_t cx, std::int64_t cy) {
            if (auto it = cells_.find(key({cx, cy})); it != cells_.end()) fn(it->second);
        };
        if (ring == 0) {
            visit(c.cx, c.cy);
            return;
        }
        for (std::int64_t dx = -ring; dx <= ring; ++dx) {
            visit(c.cx + dx, c.cy - ring);
            visit(c.cx + dx, c.cy + ring);
        }
        for (std::int64_t dy = -ring + 1; dy <= ring - 1; ++dy) {
            visit(c.cx - ring, c.cy + dy);
            visit(c.cx + ring, c.cy + dy);
        }
    }

    std::vector<PlanarPoint> points_;
    double cell_size_;
    std::vector<Cell> cell_of_;
    std::unordered_map<std::uint64_t, std::vector<PointId>> cells_;
    Cell lo_{};
    Cell hi_{};
};

}  // namespace hotspot
