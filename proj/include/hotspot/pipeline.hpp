#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hotspot/band.hpp"
#include "hotspot/error.hpp"
#include "hotspot/esm.hpp"
#include "hotspot/fdr.hpp"
#include "hotspot/geo.hpp"
#include "hotspot/gi_star.hpp"
#include "hotspot/neighbor_graph.hpp"
#include "hotspot/spatial_index.hpp"
#include "hotspot/spots.hpp"

namespace hotspot {

struct AnalysisConfig {
    /// Fixed band in meters; when unset the band comes from the Moran sweep.
    std::optional<double> band;
    BandSearchConfig search;
    SpotConfig spots;
};

/// Gi* hot spot analysis of one attribute over planar points.
struct HotSpotAnalysis {
    double band = 0.0;
    std::optional<BandSelection> selection;
    NeighborGraph graph{0.0, true, {}};
    std::vector<GiResult> gi;
    std::vector<Warning> warnings;
    FdrOutcome fdr;

    /// Count of points per bin, index bin + 3.
    [[nodiscard]] std::array<std::size_t, 7> bin_counts() const {
        std::array<std::size_t, 7> c{};
        for (const auto& r : gi) ++c[static_cast<std::size_t>(r.bin + 3)];
        return c;
    }

    [[nodiscard]] std::size_t significant_count(int min_bin = 1) const {
        std::size_t k = 0;
        for (const auto& r : gi) k += (r.bin >= min_bin || r.bin <= -min_bin) ? 1 : 0;
        return k;
    }
};

/// Band selection (unless fixed), Gi*, FDR and binning.
inline HotSpotAnalysis analyze_values(std::span<const PlanarPoint> points, std::span<const double> values,
                                      const AnalysisConfig& config = {}) {
    if (points.size() != values.size()) throw Error(ErrorCode::InputMismatch, "points and values differ in length");
    if (points.empty()) throw Error(ErrorCode::EmptyDataset, "nothing to analyze");
    HotSpotAnalysis a;
    if (config.band) {
        if (!(*config.band > 0.0)) throw Error(ErrorCode::InvalidBand, "fixed band must be positive");
        a.band = *config.band;
    } else {
        a.selection = incremental_autocorrelation(points, values, config.search);
        a.band = a.selection->band;
        a.warnings = a.selection->warnings;
    }
    const SpatialIndex index({points.begin(), points.end()}, a.band);
    a.graph = build_graph(index, a.band, true);
    auto gi = gi_star(values, a.graph);
    a.warnings.insert(a.warnings.end(), gi.warnings.begin(), gi.warnings.end());
    a.gi = std::move(gi.points);
    a.fdr = fdr_outcome(p_values_of(a.gi));
    classify(a.gi, a.fdr);
    return a;
}

/// Full analysis of ESM reports: projection, experience scores, Gi*, spots.
struct ReportAnalysis {
    Projection projection{GeoPoint{}};
    std::vector<PlanarPoint> points;
    std::vector<double> scores;
    HotSpotAnalysis hotspots;
    std::vector<Spot> spots;
};

inline ReportAnalysis analyze_reports(std::span<const EsmReport> reports, const AnalysisConfig& config = {}) {
    if (reports.empty()) throw Error(ErrorCode::EmptyDataset, "no reports");
    std::vector<GeoPoint> locations;
    locations.reserve(reports.size());
    for (const auto& r : reports) locations.push_back(r.location);
    auto projected = project(locations);

    ReportAnalysis out;
    out.projection = projected.projection;
    out.points = std::move(projected.points);
    out.scores = experience_scores(reports);
    out.hotspots = analyze_values(out.points, out.scores, config);
    out.spots = group_spots(out.hotspots.gi, out.hotspots.graph, reports, out.points, config.spots);
    return out;
}

}  // namespace hotspot
