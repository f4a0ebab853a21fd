#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/moments.hpp"
#include "hotspot/moran.hpp"
#include "hotspot/outliers.hpp"
#include "hotspot/spatial_index.hpp"

namespace hotspot {

struct BandSearchConfig {
    std::size_t increments = 10;
    /// Distance between evaluated bands; defaults to the start distance.
    std::optional<double> step;
    /// Overrides the mean nearest-neighbor start distance.
    std::optional<double> start;
    double peak_alpha = 0.05;
};

struct BandSelection {
    double band = 0.0;
    double start = 0.0;
    double step = 0.0;
    std::vector<MoranResult> curve;
    std::optional<std::size_t> peak;  // index into curve of a significant peak, if one was found
    std::vector<PointId> outliers;
    std::vector<Warning> warnings;
};

/// Picks the band from a Moran z-score curve: the first significant local
/// maximum, else the global maximum; a non-decreasing curve yields its last
/// distance.
inline std::size_t select_peak(std::span<const MoranResult> curve, double alpha, std::optional<std::size_t>& peak,
                               std::vector<Warning>& warnings) {
    peak.reset();
    if (curve.empty()) throw Error(ErrorCode::InvalidConfig, "empty Moran curve");
    const std::size_t k = curve.size();

    bool monotone = true;
    for (std::size_t i = 1; i < k; ++i) {
        if (curve[i].z < curve[i - 1].z) {
            monotone = false;
            break;
        }
    }
    if (monotone) {
        warnings.push_back(Warning::MonotoneCurve);
        return k - 1;
    }

    for (std::size_t i = 0; i + 1 < k; ++i) {
        const bool rises_into = i > 0 && curve[i].z > curve[i - 1].z;
        const bool falls_after = curve[i].z > curve[i + 1].z;
        if (rises_into && falls_after && curve[i].z > 0.0 && curve[i].p_two_sided < alpha) {
            peak = i;
            return i;
        }
    }

    warnings.push_back(Warning::NoSignificantPeak);
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; ++i) {
        if (curve[i].z > curve[best].z) best = i;
    }
    return best;
}

/// Evaluates Moran's I at start, start + step, ... and picks the fixed
/// distance band. Locational outliers are left out of the start distance
/// only; every point takes part in the Moran evaluations.
inline BandSelection incremental_autocorrelation(std::span<const PlanarPoint> points, std::span<const double> values,
                                                 const BandSearchConfig& config = {}) {
    if (points.size() != values.size()) throw Error(ErrorCode::InputMismatch, "points and values differ in length");
    if (points.size() < 4) throw Error(ErrorCode::InsufficientPoints, "band search needs at least 4 points");
    if (config.increments < 1) throw Error(ErrorCode::InvalidConfig, "increments must be at least 1");
    if (config.step && !(*config.step > 0.0)) throw Error(ErrorCode::InvalidConfig, "step must be positive");
    if (config.start && !(*config.start > 0.0)) throw Error(ErrorCode::InvalidConfig, "start must be positive");

    const Centered c = center(values);

    BandSelection sel;
    if (points.size() < 30) sel.warnings.push_back(Warning::FewPoints);

    const SpatialIndex coarse = SpatialIndex::with_spacing_cells({points.begin(), points.end()});
    sel.outliers = locational_outliers(coarse);
    if (config.start) {
        sel.start = *config.start;
    } else {
        const auto nn = coarse.nearest_neighbor_distances();
        std::vector<bool> is_outlier(points.size(), false);
        for (PointId id : sel.outliers) is_outlier[id] = true;
        double sum = 0.0;
        std::size_t used = 0;
        for (PointId i = 0; i < nn.size(); ++i) {
            if (is_outlier[i]) continue;
            sum += nn[i];
            ++used;
        }
        sel.start = used ? sum / static_cast<double>(used) : 0.0;
        if (!(sel.start > 0.0)) {
            throw Error(ErrorCode::InsufficientPoints, "all points share one location; no distance scale");
        }
    }
    sel.step = config.step.value_or(sel.start);

    sel.curve.reserve(config.increments);
    for (std::size_t s = 0; s < config.increments; ++s) {
        const double d = sel.start + static_cast<double>(s) * sel.step;
        const SpatialIndex index({points.begin(), points.end()}, d);
        sel.curve.push_back(detail::morans_i_symmetric(c, d, [&](std::size_t i, auto&& fn) {
            index.visit_within(index.point(i), d, [&](PointId j) {
                if (j != i) fn(j);
            });
        }));
    }

    const std::size_t chosen = select_peak(sel.curve, config.peak_alpha, sel.peak, sel.warnings);
    sel.band = sel.curve[chosen].distance;
    return sel;
}

}  // namespace hotspot
