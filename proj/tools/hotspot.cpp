// hotspot: batch front end for experience-sampling hot spot analysis.
//
//   hotspot synth     --out data.csv [--seed N] [--scenario standard|null]
//   hotspot analyze   --input data.csv --out results/ [--band M] [--min-conf 90|95|99]
//   hotspot calibrate --out calibration.csv --replicates N [--scenario null|standard]

#include <CLI11.hpp>

#include "hotspot/commands.hpp"

int main(int argc, char** argv) {
    using namespace hotspot::cli;

    CLI::App app{"Getis-Ord Gi* hot spot analysis of geo-tagged experience-sampling reports"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    AnalyzeOptions analyze;
    std::string analyze_input, analyze_out;
    std::optional<double> band;
    auto* cmd_analyze = app.add_subcommand("analyze", "Select the distance band, run Gi* and extract spots");
    cmd_analyze->add_option("--input", analyze_input, "ESM report CSV")->required();
    cmd_analyze->add_option("--out", analyze_out, "Output directory")->required();
    cmd_analyze->add_option("--band", band, "Fixed distance band in meters (skips band optimization)");
    cmd_analyze->add_option("--min-conf", analyze.min_conf, "Minimum confidence for spot membership")
        ->check(CLI::IsMember({90, 95, 99}));
    cmd_analyze->add_option("--min-size", analyze.min_size, "Minimum members per spot");
    cmd_analyze->add_option("--increments", analyze.increments, "Distances evaluated by the band search");

    SynthOptions synth;
    std::string synth_out;
    std::size_t n_background = 0;
    double radius = 0.0;
    auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic ESM dataset with planted clusters");
    cmd_synth->add_option("--out", synth_out, "Output CSV path")->required();
    cmd_synth->add_option("--seed", synth.seed, "Random seed");
    cmd_synth->add_option("--scenario", synth.scenario, "standard (two planted clusters) or null")
        ->check(CLI::IsMember({"standard", "null"}));
    auto* opt_background = cmd_synth->add_option("--n-background", n_background, "Background report count");
    auto* opt_radius = cmd_synth->add_option("--radius", radius, "Planted cluster radius in meters");

    CalibrateOptions calibrate;
    std::string calibrate_out;
    auto* cmd_calibrate = app.add_subcommand("calibrate", "Run the pipeline over seeded synthetic replicates");
    cmd_calibrate->add_option("--out", calibrate_out, "Output CSV path")->required();
    cmd_calibrate->add_option("--replicates", calibrate.replicates, "Number of replicates")->required();
    cmd_calibrate->add_option("--seed", calibrate.seed, "Seed of the first replicate");
    cmd_calibrate->add_option("--scenario", calibrate.scenario, "null or standard (planted-cluster recovery)")
        ->check(CLI::IsMember({"standard", "null"}));
    cmd_calibrate->add_option("--min-conf", calibrate.min_conf, "Minimum confidence for recovery scoring")
        ->check(CLI::IsMember({90, 95, 99}));
    cmd_calibrate->add_option("--min-size", calibrate.min_size, "Minimum members per spot");
    cmd_calibrate->add_option("--increments", calibrate.increments, "Distances evaluated by the band search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kConfigError;
    }

    if (cmd_analyze->parsed()) {
        analyze.input = analyze_input;
        analyze.output_dir = analyze_out;
        analyze.band = band;
        return run_analyze(analyze);
    }
    if (cmd_synth->parsed()) {
        synth.output = synth_out;
        if (opt_background->count() > 0) synth.n_background = n_background;
        if (opt_radius->count() > 0) synth.radius = radius;
        return run_synth(synth);
    }
    calibrate.output = calibrate_out;
    return run_calibrate(calibrate);
}
