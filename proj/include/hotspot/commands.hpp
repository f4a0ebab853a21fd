#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hotspot/error.hpp"
#include "hotspot/esm.hpp"
#include "hotspot/geojson.hpp"
#include "hotspot/pipeline.hpp"
#include "hotspot/synth.hpp"

namespace hotspot::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,
    kDegenerate = 3,
    kConfigError = 4,
};

inline int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyDataset:
        case ErrorCode::SchemaError:
        case ErrorCode::InvalidInput:
        case ErrorCode::IdOutOfRange:
            return kInputError;
        case ErrorCode::InsufficientPoints:
        case ErrorCode::DegenerateValues:
        case ErrorCode::NoNeighbors:
        case ErrorCode::DegenerateMarginals:
        case ErrorCode::InvalidPValue:
            return kDegenerate;
        case ErrorCode::InvalidBand:
        case ErrorCode::InvalidConfig:
        case ErrorCode::InputMismatch:
            return kConfigError;
    }
    return kConfigError;
}

struct AnalyzeOptions {
    std::filesystem::path input;
    std::filesystem::path output_dir;
    std::optional<double> band;
    int min_conf = 90;
    std::size_t min_size = 5;
    std::size_t increments = 10;
};

struct SynthOptions {
    std::filesystem::path output;
    std::uint64_t seed = 1;
    std::string scenario = "standard";  // standard | null
    std::optional<std::size_t> n_background;
    std::optional<double> radius;
};

struct CalibrateOptions {
    std::filesystem::path output;
    std::uint64_t seed = 1;
    std::size_t replicates = 10;
    std::string scenario = "null";  // null | standard
    int min_conf = 90;
    std::size_t min_size = 5;
    std::size_t increments = 10;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::InvalidConfig, "failed writing " + path.string());
}

inline void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::InvalidConfig, "output directory not usable: " + dir.string());
    }
}

inline void check_analysis_config(const AnalyzeOptions& o) {
    if (o.band && !(*o.band > 0.0)) throw Error(ErrorCode::InvalidConfig, "--band must be positive");
    bin_for_confidence(o.min_conf);
    if (o.min_size < 1) throw Error(ErrorCode::InvalidConfig, "--min-size must be at least 1");
    if (o.increments < 1) throw Error(ErrorCode::InvalidConfig, "--increments must be at least 1");
}

inline Json moran_json(const MoranResult& m) {
    return {{"distance_m", m.distance}, {"moran_i", m.index}, {"expected_i", m.expected},
            {"variance", m.variance},   {"z", m.z},           {"p", m.p_two_sided}};
}

inline Json warnings_json(const std::vector<Warning>& ws) {
    Json out = Json::array();
    for (Warning w : ws) out.push_back(std::string(to_string(w)));
    return out;
}

}  // namespace detail

/// Run manifest: every configuration value plus the results needed to
/// reproduce and audit the run. Contains no wall-clock data.
inline Json build_manifest(const AnalyzeOptions& o, const ParseResult& parsed, const ReportAnalysis& a) {
    const auto& hs = a.hotspots;
    Json config = {
        {"input", o.input.filename().string()},
        {"band_m", o.band ? Json(*o.band) : Json(nullptr)},
        {"alpha_levels", Json::array({kAlphaLevels[0], kAlphaLevels[1], kAlphaLevels[2]})},
        {"min_conf", o.min_conf},
        {"min_size", o.min_size},
        {"increments", o.increments},
    };

    Json band = {{"chosen_m", hs.band}, {"mode", hs.selection ? "optimized" : "fixed"}};
    if (hs.selection) {
        const auto& sel = *hs.selection;
        Json curve = Json::array();
        for (const auto& m : sel.curve) curve.push_back(detail::moran_json(m));
        band["start_m"] = sel.start;
        band["step_m"] = sel.step;
        band["peak_index"] = sel.peak ? Json(*sel.peak) : Json(nullptr);
        band["locational_outliers"] = sel.outliers.size();
        band["moran_curve"] = std::move(curve);
    }

    const auto counts = hs.bin_counts();
    Json bins = Json::object();
    for (int b = -3; b <= 3; ++b) bins[std::to_string(b)] = counts[static_cast<std::size_t>(b + 3)];
    Json fdr = Json::array();
    for (const auto& l : hs.fdr.levels) {
        fdr.push_back({{"alpha", l.alpha}, {"critical_p", l.critical_p}, {"rejected", l.rejected}});
    }
    std::size_t max_neighbors = 0;
    for (const auto& g : hs.gi) max_neighbors = std::max(max_neighbors, g.neighbor_count);

    Json spots = Json::array();
    for (const auto& s : a.spots) {
        spots.push_back({{"spot_id", s.spot_id},
                         {"polarity", to_string(s.polarity)},
                         {"n_reports", s.profile.n_reports},
                         {"n_participants", s.profile.n_participants},
                         {"mean_experience", s.profile.mean_experience}});
    }

    return {
        {"tool", "hotspot"},
        {"version", kToolVersion},
        {"config", std::move(config)},
        {"input",
         {{"n_reports", parsed.reports.size()},
          {"n_rejected", parsed.rejections.size()},
          {"n_participants", count_participants(parsed.reports)}}},
        {"projection_origin", {{"lat", a.projection.origin().lat}, {"lon", a.projection.origin().lon}}},
        {"band", std::move(band)},
        {"significance",
         {{"bin_counts", std::move(bins)},
          {"significant_points", hs.significant_count(1)},
          {"significant_at_min_conf", hs.significant_count(bin_for_confidence(o.min_conf))},
          {"max_neighbor_count", max_neighbors},
          {"fdr", std::move(fdr)}}},
        {"spots", std::move(spots)},
        {"warnings", detail::warnings_json(hs.warnings)},
        {"artifacts", Json::array({"points.geojson", "spots.geojson", "spot_summary.csv", "manifest.json"})},
    };
}

/// analyze: CSV in, GeoJSON + summary CSV + manifest out. Nothing but a
/// rejection report is written unless the whole analysis succeeds.
inline int run_analyze(const AnalyzeOptions& o, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    try {
        detail::check_analysis_config(o);
        std::ifstream in(o.input, std::ios::binary);
        if (!in) throw Error(ErrorCode::InvalidInput, "cannot open input " + o.input.string());

        const ParseResult parsed = read_reports(in);
        if (parsed.reports.empty()) {
            if (!parsed.rejections.empty()) {
                std::ostringstream rej;
                write_rejections(rej, parsed.rejections);
                detail::ensure_dir(o.output_dir);
                detail::write_file(o.output_dir / "rejections.csv", rej.str());
                err << "error: all " << parsed.rejections.size() << " rows rejected, see "
                    << (o.output_dir / "rejections.csv").string() << '\n';
            }
            throw Error(ErrorCode::EmptyDataset, "no valid report rows in " + o.input.string());
        }

        if (parsed.reports.size() < 30) {
            err << "warning: only " << parsed.reports.size() << " valid reports; results are unstable below 30\n";
        }

        AnalysisConfig config;
        config.band = o.band;
        config.search.increments = o.increments;
        config.spots.min_confidence = o.min_conf;
        config.spots.min_size = o.min_size;
        const ReportAnalysis a = analyze_reports(parsed.reports, config);

        const Json manifest = build_manifest(o, parsed, a);
        const Json points = points_feature_collection(parsed.reports, a.scores, a.hotspots.gi, a.spots);
        const Json spots = spots_feature_collection(a.spots, a.projection);
        std::ostringstream summary;
        write_spot_summary(summary, a.spots, parsed.reports);

        detail::ensure_dir(o.output_dir);
        detail::write_file(o.output_dir / "points.geojson", points.dump(1) + "\n");
        detail::write_file(o.output_dir / "spots.geojson", spots.dump(1) + "\n");
        detail::write_file(o.output_dir / "spot_summary.csv", summary.str());
        detail::write_file(o.output_dir / "manifest.json", manifest.dump(2) + "\n");
        if (!parsed.rejections.empty()) {
            std::ostringstream rej;
            write_rejections(rej, parsed.rejections);
            detail::write_file(o.output_dir / "rejections.csv", rej.str());
            err << "warning: " << parsed.rejections.size() << " rows rejected, see "
                << (o.output_dir / "rejections.csv").string() << '\n';
        }
        for (Warning w : a.hotspots.warnings) err << "warning: " << to_string(w) << '\n';

        log << "reports: " << parsed.reports.size() << ", participants: " << count_participants(parsed.reports)
            << "\nband: " << a.hotspots.band << " m (" << (a.hotspots.selection ? "optimized" : "fixed") << ")"
            << "\nsignificant points: " << a.hotspots.significant_count(1) << "\nspots: " << a.spots.size() << '\n';
        return kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

inline SyntheticScenario scenario_for(const std::string& name, std::uint64_t seed) {
    if (name == "standard") return standard_scenario(seed);
    if (name == "null") return null_scenario(seed);
    throw Error(ErrorCode::InvalidConfig, "unknown scenario '" + name + "' (expected standard or null)");
}

/// synth: writes a generated dataset in the ESM CSV format.
inline int run_synth(const SynthOptions& o, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    try {
        SyntheticScenario s = scenario_for(o.scenario, o.seed);
        if (o.n_background) s.n_background = *o.n_background;
        if (o.radius) {
            for (auto& c : s.clusters) c.radius = *o.radius;
        }
        const auto data = generate(s);
        std::ostringstream csv;
        write_reports(csv, data.reports);
        if (o.output.has_parent_path()) detail::ensure_dir(o.output.parent_path());
        detail::write_file(o.output, csv.str());
        log << "wrote " << data.reports.size() << " reports to " << o.output.string() << '\n';
        return kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

/// calibrate: replicate the pipeline over seeded synthetic datasets.
inline int run_calibrate(const CalibrateOptions& o, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    try {
        if (o.replicates < 1) throw Error(ErrorCode::InvalidConfig, "--replicates must be at least 1");
        const SyntheticScenario base = scenario_for(o.scenario, o.seed);
        AnalysisConfig config;
        config.search.increments = o.increments;
        config.spots.min_confidence = o.min_conf;
        config.spots.min_size = o.min_size;
        const CalibrationSummary summary = run_calibration(o.replicates, base, config);
        std::ostringstream csv;
        write_calibration(csv, summary);
        if (o.output.has_parent_path()) detail::ensure_dir(o.output.parent_path());
        detail::write_file(o.output, csv.str());
        log << "replicates: " << o.replicates << " (failures: " << summary.failures << ")"
            << "\nmean pre-FDR rate |z|>1.96: " << summary.mean_pre_fdr_rate
            << "\nmean significant fraction: " << summary.mean_significant_fraction
            << "\nband range: " << summary.min_band << " - " << summary.max_band << " m (mean " << summary.mean_band
            << ")\n";
        if (summary.mean_recovery) {
            log << "mean recovery: " << *summary.mean_recovery
                << "\nmean background false-positive rate: " << *summary.mean_background_fp_rate
                << "\nspot match rate: " << *summary.spots_match_rate << '\n';
        }
        return kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

}  // namespace hotspot::cli
