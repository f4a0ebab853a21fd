#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "hotspot/esm.hpp"
#include "hotspot/geo.hpp"
#include "hotspot/gi_star.hpp"
#include "hotspot/spots.hpp"

namespace hotspot {

using Json = nlohmann::ordered_json;

inline Json position(const GeoPoint& g) { return Json::array({g.lon, g.lat}); }

/// Event percentages keyed by category token.
inline Json event_profile_json(const SpotProfile& p) {
    Json out = Json::object();
    for (std::size_t e = 0; e < kEventCount; ++e) out[std::string(kEventTokens[e])] = p.event_percent(event_at(e));
    return out;
}

/// One Point feature per analyzed report; spot_id is null outside spots.
inline Json points_feature_collection(std::span<const EsmReport> reports, std::span<const double> scores,
                                      std::span<const GiResult> gi, std::span<const Spot> spots) {
    std::vector<std::optional<std::size_t>> spot_of(reports.size());
    for (const auto& s : spots) {
        for (PointId id : s.member_ids) spot_of[id] = s.spot_id;
    }
    Json features = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        Json props = {
            {"report_id", reports[i].report_id},
            {"participant_id", reports[i].participant_id},
            {"experience", scores[i]},
            {"z", gi[i].z},
            {"p", gi[i].p_two_sided},
            {"bin", gi[i].bin},
            {"neighbor_count", gi[i].neighbor_count},
            {"spot_id", spot_of[i] ? Json(*spot_of[i]) : Json(nullptr)},
        };
        features.push_back({
            {"type", "Feature"},
            {"geometry", {{"type", "Point"}, {"coordinates", position(reports[i].location)}}},
            {"properties", std::move(props)},
        });
    }
    return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

/// One Polygon feature per spot, hull vertices mapped back to WGS84.
inline Json spots_feature_collection(std::span<const Spot> spots, const Projection& projection) {
    Json features = Json::array();
    for (const auto& s : spots) {
        Json ring = Json::array();
        for (const auto& v : s.hull) ring.push_back(position(projection.inverse(v)));
        if (!s.hull.empty()) ring.push_back(position(projection.inverse(s.hull.front())));
        Json props = {
            {"spot_id", s.spot_id},
            {"polarity", to_string(s.polarity)},
            {"n_reports", s.profile.n_reports},
            {"n_participants", s.profile.n_participants},
            {"mean_experience", s.profile.mean_experience},
            {"event_percent", event_profile_json(s.profile)},
        };
        features.push_back({
            {"type", "Feature"},
            {"geometry", {{"type", "Polygon"}, {"coordinates", Json::array({std::move(ring)})}}},
            {"properties", std::move(props)},
        });
    }
    return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace hotspot
