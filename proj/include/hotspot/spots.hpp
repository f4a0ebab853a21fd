#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/esm.hpp"
#include "hotspot/events.hpp"
#include "hotspot/fdr.hpp"
#include "hotspot/gi_star.hpp"
#include "hotspot/hull.hpp"
#include "hotspot/neighbor_graph.hpp"
#include "hotspot/text.hpp"

namespace hotspot {

enum class Polarity { Hot, Cold };

constexpr std::string_view to_string(Polarity p) noexcept { return p == Polarity::Hot ? "hot" : "cold"; }

/// Descriptive summary of a set of reports.
struct SpotProfile {
    std::size_t n_reports = 0;
    std::size_t n_participants = 0;
    double mean_experience = 0.0;
    std::array<std::size_t, kEventCount> event_counts{};

    /// Share of reports flagging the event, in percent.
    [[nodiscard]] double event_percent(EventCategory e) const noexcept {
        if (n_reports == 0) return 0.0;
        return 100.0 * static_cast<double>(event_counts[static_cast<std::size_t>(e)]) /
               static_cast<double>(n_reports);
    }
};

inline SpotProfile profile_reports(std::span<const EsmReport> reports, std::span<const PointId> ids) {
    SpotProfile p;
    p.n_reports = ids.size();
    std::unordered_set<std::string_view> participants;
    double sum = 0.0;
    for (PointId id : ids) {
        const auto& r = reports[id];
        participants.insert(r.participant_id);
        sum += experience_score(r);
        for (std::size_t e = 0; e < kEventCount; ++e) {
            if (r.events.contains(event_at(e))) ++p.event_counts[e];
        }
    }
    p.n_participants = participants.size();
    p.mean_experience = ids.empty() ? 0.0 : sum / static_cast<double>(ids.size());
    return p;
}

struct Spot {
    std::size_t spot_id = 0;  // 1-based
    Polarity polarity = Polarity::Hot;
    std::vector<PointId> member_ids;  // ascending
    std::vector<PlanarPoint> hull;    // counter-clockwise
    SpotProfile profile;
};

struct SpotConfig {
    int min_confidence = 90;
    std::size_t min_size = 5;
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
};

/// Groups significant points into spots: same-sign points at or above the
/// confidence threshold are linked when within the band, and connected
/// components with at least min_size members become spots. Spots are
/// numbered by descending report count (ties: smallest member id first).
inline std::vector<Spot> group_spots(std::span<const GiResult> results, const NeighborGraph& graph,
                                     std::span<const EsmReport> reports, std::span<const PlanarPoint> points,
                                     const SpotConfig& config = {}) {
    if (config.min_size < 1) throw Error(ErrorCode::InvalidConfig, "min_size must be at least 1");
    const int min_bin = bin_for_confidence(config.min_confidence);
    const std::size_t n = results.size();
    if (graph.size() != n || reports.size() != n || points.size() != n) {
        throw Error(ErrorCode::InputMismatch, "results, graph, reports and points must align");
    }

    auto sign_of = [&](PointId i) {
        const int b = results[i].bin;
        if (b >= min_bin) return 1;
        if (b <= -min_bin) return -1;
        return 0;
    };

    DisjointSets sets(n);
    for (PointId i = 0; i < n; ++i) {
        const int si = sign_of(i);
        if (si == 0) continue;
        for (PointId j : graph.neighbors(i)) {
            if (j > i && sign_of(j) == si) sets.unite(i, j);
        }
    }

    std::vector<std::vector<PointId>> components(n);
    for (PointId i = 0; i < n; ++i) {
        if (sign_of(i) != 0) components[sets.find(i)].push_back(i);
    }

    std::vector<Spot> spots;
    for (auto& members : components) {
        if (members.empty() || members.size() < config.min_size) continue;
        Spot s;
        s.polarity = sign_of(members.front()) > 0 ? Polarity::Hot : Polarity::Cold;
        std::vector<PlanarPoint> coords;
        coords.reserve(members.size());
        for (PointId id : members) coords.push_back(points[id]);
        s.hull = polygon_hull(coords);
        s.profile = profile_reports(reports, members);
        s.member_ids = std::move(members);
        spots.push_back(std::move(s));
    }
    std::sort(spots.begin(), spots.end(), [](const Spot& a, const Spot& b) {
        if (a.member_ids.size() != b.member_ids.size()) return a.member_ids.size() > b.member_ids.size();
        return a.member_ids.front() < b.member_ids.front();
    });
    for (std::size_t k = 0; k < spots.size(); ++k) spots[k].spot_id = k + 1;
    return spots;
}

/// Summary table: one row per spot plus one pooled row per polarity present
/// (spot_id "all"). Percentages carry one decimal.
inline void write_spot_summary(std::ostream& out, std::span<const Spot> spots, std::span<const EsmReport> reports) {
    out << "spot_id,polarity,n_reports,n_participants,mean_experience";
    for (auto token : kEventTokens) out << ',' << token;
    out << '\n';

    auto row = [&](std::string_view id, Polarity polarity, const SpotProfile& p) {
        out << id << ',' << to_string(polarity) << ',' << p.n_reports << ',' << p.n_participants << ','
            << text::fixed(p.mean_experience, 3);
        for (std::size_t e = 0; e < kEventCount; ++e) out << ',' << text::fixed(p.event_percent(event_at(e)), 1);
        out << '\n';
    };

    for (const auto& s : spots) row(std::to_string(s.spot_id), s.polarity, s.profile);
    for (Polarity polarity : {Polarity::Hot, Polarity::Cold}) {
        std::vector<PointId> pooled;
        for (const auto& s : spots) {
            if (s.polarity == polarity) pooled.insert(pooled.end(), s.member_ids.begin(), s.member_ids.end());
        }
        if (pooled.empty()) continue;
        std::sort(pooled.begin(), pooled.end());
        row("all", polarity, profile_reports(reports, pooled));
    }
}

}  // namespace hotspot
