#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/esm.hpp"
#include "hotspot/events.hpp"
#include "hotspot/geo.hpp"
#include "hotspot/pipeline.hpp"
#include "hotspot/text.hpp"

namespace hotspot {

using EventRates = std::array<double, kEventCount>;

struct PlantedCluster {
    PlanarPoint center;
    double radius = 500.0;  // positions are Gaussian with SD = radius / 2
    std::size_t n_points = 300;
    double experience_shift = 0.0;
    EventRates event_rates{};
};

/// Generator parameters. Planar coordinates are meters around `origin`.
struct SyntheticScenario {
    std::uint64_t seed = 1;
    double extent = 30'000.0;  // side of the square background area
    std::size_t n_background = 2000;
    std::vector<PlantedCluster> clusters;
    double background_experience_mean = 3.0;
    double noise_sd = 0.5;
    /// Share of item variance carried by the report-level latent, as a loading.
    double item_loading = 0.9;
    std::size_t n_participants = 120;
    EventRates background_event_rates{};
    GeoPoint origin{53.5511, 9.9937};
    Timestamp start = Timestamp{std::chrono::milliseconds{1'714'550'400'000}};  // 2024-05-01T08:00:00Z
};

inline void validate(const SyntheticScenario& s) {
    auto fail = [](const char* what) { throw Error(ErrorCode::InvalidConfig, what); };
    auto rates_ok = [](const EventRates& r) {
        return std::all_of(r.begin(), r.end(), [](double p) { return p >= 0.0 && p <= 1.0; });
    };
    if (!(s.extent > 0.0)) fail("extent must be positive");
    if (!(s.noise_sd >= 0.0)) fail("noise_sd must be non-negative");
    if (!(s.item_loading >= 0.0 && s.item_loading <= 1.0)) fail("item_loading must lie in [0, 1]");
    if (s.background_experience_mean < kItemMin || s.background_experience_mean > kItemMax) {
        fail("background mean must lie in [1, 5]");
    }
    if (s.n_participants < 1) fail("need at least one participant");
    if (!s.origin.valid()) fail("origin outside WGS84 bounds");
    if (!rates_ok(s.background_event_rates)) fail("background event rates must lie in [0, 1]");
    std::size_t total = s.n_background;
    for (const auto& c : s.clusters) {
        if (!(c.radius > 0.0)) fail("cluster radius must be positive");
        if (!rates_ok(c.event_rates)) fail("cluster event rates must lie in [0, 1]");
        total += c.n_points;
    }
    if (total == 0) fail("scenario generates no reports");
}

struct SyntheticDataset {
    std::vector<EsmReport> reports;
    std::vector<PlanarPoint> planar;  // generation frame, centered on the scenario origin
    std::vector<int> cluster_of;      // -1 for background
};

/// Draws the reports. Background first, then clusters in order; ids and
/// participants are assigned round-robin over the combined sequence.
inline SyntheticDataset generate(const SyntheticScenario& scenario) {
    validate(scenario);
    std::mt19937_64 rng(scenario.seed);
    std::uniform_real_distribution<double> uniform(-0.5 * scenario.extent, 0.5 * scenario.extent);
    std::normal_distribution<double> standard(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double latent_sd = scenario.noise_sd * scenario.item_loading;
    const double item_sd = scenario.noise_sd * std::sqrt(1.0 - scenario.item_loading * scenario.item_loading);
    const Projection frame(scenario.origin);

    SyntheticDataset data;
    auto emit = [&](PlanarPoint p, double shift, const EventRates& rates, int cluster) {
        const std::size_t k = data.reports.size();
        const std::size_t participant = k % scenario.n_participants;
        const std::size_t round = k / scenario.n_participants;

        EsmReport r;
        char buf[48];
        std::snprintf(buf, sizeof buf, "R%07zu", k + 1);
        r.report_id = buf;
        std::snprintf(buf, sizeof buf, "P%04zu", participant + 1);
        r.participant_id = buf;
        std::snprintf(buf, sizeof buf, "P%04zu-T%03zu", participant + 1, round / 12 + 1);
        r.trip_id = buf;
        r.timestamp = scenario.start + std::chrono::minutes{5} * static_cast<long>(k);
        r.location = frame.inverse(p);

        const double latent = scenario.background_experience_mean + shift + latent_sd * standard(rng);
        for (auto& item : r.items) item = std::clamp(latent + item_sd * standard(rng), kItemMin, kItemMax);
        for (std::size_t e = 0; e < kEventCount; ++e) {
            if (unit(rng) < rates[e]) r.events.insert(event_at(e));
        }
        data.reports.push_back(std::move(r));
        data.planar.push_back(p);
        data.cluster_of.push_back(cluster);
    };

    for (std::size_t i = 0; i < scenario.n_background; ++i) {
        const double x = uniform(rng);
        const double y = uniform(rng);
        emit({x, y}, 0.0, scenario.background_event_rates, -1);
    }
    for (std::size_t c = 0; c < scenario.clusters.size(); ++c) {
        const auto& cl = scenario.clusters[c];
        const double sd = cl.radius / 2.0;
        for (std::size_t i = 0; i < cl.n_points; ++i) {
            const double x = cl.center.x + sd * standard(rng);
            const double y = cl.center.y + sd * standard(rng);
            emit({x, y}, cl.experience_shift, cl.event_rates, static_cast<int>(c));
        }
    }
    return data;
}

inline EventRates uniform_rates(double p) {
    EventRates r;
    r.fill(p);
    return r;
}

/// Two planted clusters, one hot (+shift) and one cold (-shift), 15 km
/// apart on a 30 km square with 2,000 background reports.
inline SyntheticScenario standard_scenario(std::uint64_t seed, double radius = 500.0, double shift = 1.5) {
    SyntheticScenario s;
    s.seed = seed;
    s.background_event_rates = uniform_rates(0.10);

    PlantedCluster hot;
    hot.center = {-7500.0, 0.0};
    hot.radius = radius;
    hot.n_points = 300;
    hot.experience_shift = shift;
    hot.event_rates = uniform_rates(0.05);
    hot.event_rates[static_cast<std::size_t>(EventCategory::Comfort)] = 0.60;
    hot.event_rates[static_cast<std::size_t>(EventCategory::NiceEnvironment)] = 0.25;
    hot.event_rates[static_cast<std::size_t>(EventCategory::ArrivedOnSchedule)] = 0.40;

    PlantedCluster cold = hot;
    cold.center = {7500.0, 0.0};
    cold.experience_shift = -shift;
    cold.event_rates = uniform_rates(0.05);
    cold.event_rates[static_cast<std::size_t>(EventCategory::Overcrowded)] = 0.40;
    cold.event_rates[static_cast<std::size_t>(EventCategory::DisruptivePeople)] = 0.30;
    cold.event_rates[static_cast<std::size_t>(EventCategory::Delay)] = 0.35;

    s.clusters = {hot, cold};
    return s;
}

/// Null scenario: background only.
inline SyntheticScenario null_scenario(std::uint64_t seed, std::size_t n = 500) {
    SyntheticScenario s;
    s.seed = seed;
    s.n_background = n;
    s.extent = 10'000.0;
    s.background_event_rates = uniform_rates(0.10);
    return s;
}

/// Per-replicate outcome of the analysis pipeline on a generated dataset.
struct ReplicateOutcome {
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    std::string status = "ok";  // "ok" or the error code name
    std::size_t n = 0;
    double band = 0.0;
    double pre_fdr_rate = 0.0;         // share of points with |z| > 1.96
    std::size_t significant = 0;       // points with |bin| at or above min_conf
    double significant_fraction = 0.0;
    std::optional<double> recovery;             // planted points with correct-sign bin
    std::optional<double> background_fp_rate;   // background points with nonzero bin at min_conf
    std::size_t n_spots = 0;
    std::optional<bool> spots_match;  // one spot per planted cluster with the right polarity
};

struct CalibrationSummary {
    std::vector<ReplicateOutcome> replicates;
    std::size_t failures = 0;
    double mean_pre_fdr_rate = 0.0;
    double mean_significant_fraction = 0.0;
    double mean_band = 0.0;
    double min_band = 0.0;
    double max_band = 0.0;
    std::optional<double> mean_recovery;
    std::optional<double> mean_background_fp_rate;
    std::optional<double> spots_match_rate;
};

/// Scores one generated dataset against its planted labels.
inline ReplicateOutcome evaluate_replicate(const SyntheticScenario& scenario, const SyntheticDataset& data,
                                           const ReportAnalysis& analysis, int min_bin) {
    ReplicateOutcome o;
    o.seed = scenario.seed;
    o.n = data.reports.size();
    o.band = analysis.hotspots.band;
    std::size_t exceed = 0;
    for (const auto& g : analysis.hotspots.gi) exceed += std::fabs(g.z) > 1.96 ? 1 : 0;
    o.pre_fdr_rate = static_cast<double>(exceed) / static_cast<double>(o.n);
    o.significant = analysis.hotspots.significant_count(min_bin);
    o.significant_fraction = static_cast<double>(o.significant) / static_cast<double>(o.n);
    o.n_spots = analysis.spots.size();

    if (!scenario.clusters.empty()) {
        std::size_t planted = 0, recovered = 0, background = 0, false_pos = 0;
        for (std::size_t i = 0; i < o.n; ++i) {
            const int bin = analysis.hotspots.gi[i].bin;
            const int c = data.cluster_of[i];
            if (c < 0) {
                ++background;
                false_pos += (bin >= min_bin || bin <= -min_bin) ? 1 : 0;
                continue;
            }
            ++planted;
            const bool hot = scenario.clusters[static_cast<std::size_t>(c)].experience_shift > 0.0;
            recovered += (hot ? bin >= min_bin : bin <= -min_bin) ? 1 : 0;
        }
        o.recovery = planted ? static_cast<double>(recovered) / static_cast<double>(planted) : 0.0;
        o.background_fp_rate = background ? static_cast<double>(false_pos) / static_cast<double>(background) : 0.0;

        // Each planted cluster must own exactly one spot of its polarity,
        // identified by majority membership.
        bool match = analysis.spots.size() == scenario.clusters.size();
        std::vector<int> owner(scenario.clusters.size(), 0);
        for (const auto& spot : analysis.spots) {
            std::vector<std::size_t> votes(scenario.clusters.size(), 0);
            for (PointId id : spot.member_ids) {
                if (data.cluster_of[id] >= 0) ++votes[static_cast<std::size_t>(data.cluster_of[id])];
            }
            const auto best = static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
            if (votes.empty() || votes[best] == 0) {
                match = false;
                continue;
            }
            ++owner[best];
            const bool hot = scenario.clusters[best].experience_shift > 0.0;
            if (hot != (spot.polarity == Polarity::Hot)) match = false;
        }
        for (int k : owner) match = match && k == 1;
        o.spots_match = match;
    }
    return o;
}

/// Runs the pipeline on `replicates` datasets drawn with seeds
/// base.seed + r. Pipeline errors are recorded per replicate, not thrown.
inline CalibrationSummary run_calibration(std::size_t replicates, const SyntheticScenario& base,
                                          const AnalysisConfig& config = {}) {
    if (replicates < 1) throw Error(ErrorCode::InvalidConfig, "replicate count must be at least 1");
    validate(base);
    const int min_bin = bin_for_confidence(config.spots.min_confidence);
    CalibrationSummary sum;
    double recovery = 0.0, fp = 0.0, matched = 0.0;
    std::size_t ok = 0;
    for (std::size_t r = 0; r < replicates; ++r) {
        SyntheticScenario s = base;
        s.seed = base.seed + r;
        ReplicateOutcome o;
        try {
            const auto data = generate(s);
            const auto analysis = analyze_reports(data.reports, config);
            o = evaluate_replicate(s, data, analysis, min_bin);
        } catch (const Error& e) {
            o.seed = s.seed;
            o.status = std::string(to_string(e.code()));
            ++sum.failures;
        }
        o.replicate = r;
        if (o.status == "ok") {
            if (ok == 0) {
                sum.min_band = sum.max_band = o.band;
            } else {
                sum.min_band = std::min(sum.min_band, o.band);
                sum.max_band = std::max(sum.max_band, o.band);
            }
            ++ok;
            sum.mean_pre_fdr_rate += o.pre_fdr_rate;
            sum.mean_significant_fraction += o.significant_fraction;
            sum.mean_band += o.band;
            if (o.recovery) recovery += *o.recovery;
            if (o.background_fp_rate) fp += *o.background_fp_rate;
            if (o.spots_match) matched += *o.spots_match ? 1.0 : 0.0;
        }
        sum.replicates.push_back(std::move(o));
    }
    if (ok > 0) {
        const double k = static_cast<double>(ok);
        sum.mean_pre_fdr_rate /= k;
        sum.mean_significant_fraction /= k;
        sum.mean_band /= k;
        if (!base.clusters.empty()) {
            sum.mean_recovery = recovery / k;
            sum.mean_background_fp_rate = fp / k;
            sum.spots_match_rate = matched / k;
        }
    }
    return sum;
}

inline void write_calibration(std::ostream& out, const CalibrationSummary& s) {
    auto opt = [](const std::optional<double>& v, int decimals) {
        return v ? text::fixed(*v, decimals) : std::string();
    };
    out << "replicate,seed,status,n,band_m,pre_fdr_rate,significant,significant_fraction,recovery_fraction,"
           "background_fp_rate,n_spots,spots_match\n";
    for (const auto& r : s.replicates) {
        out << r.replicate << ',' << r.seed << ',' << r.status << ',' << r.n << ',' << text::fixed(r.band, 3) << ','
            << text::fixed(r.pre_fdr_rate, 6) << ',' << r.significant << ',' << text::fixed(r.significant_fraction, 6)
            << ',' << opt(r.recovery, 6) << ',' << opt(r.background_fp_rate, 6) << ',' << r.n_spots << ','
            << (r.spots_match ? (*r.spots_match ? "1" : "0") : "") << '\n';
    }
    out << "summary,," << "failures=" << s.failures << ",," << text::fixed(s.mean_band, 3) << ','
        << text::fixed(s.mean_pre_fdr_rate, 6) << ",," << text::fixed(s.mean_significant_fraction, 6) << ','
        << opt(s.mean_recovery, 6) << ',' << opt(s.mean_background_fp_rate, 6) << ",," << opt(s.spots_match_rate, 6)
        << '\n';
}

}  // namespace hotspot
