// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance [work_dir]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "hotspot/commands.hpp"
#include "hotspot/kappa.hpp"
#include "oracles.hpp"

using namespace hotspot;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Stopwatch {
public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void gi_oracle() {
    Stopwatch clock;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> size(20, 500);
    std::uniform_real_distribution<double> band(20.0, 600.0);
    double worst = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto pts = oracle::random_points(rng, size(rng), 2000.0);
        const auto x = oracle::random_normals(rng, pts.size(), 3.0, 0.8);
        AnalysisConfig cfg;
        cfg.band = band(rng);
        const auto got = analyze_values(pts, x, cfg);
        const auto want = oracle::gi_star(x, oracle::dense_weights(pts, *cfg.band, true));
        for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::fabs(got.gi[i].z - want[i]));
    }
    const double t = clock.seconds();
    report(1, worst <= 1e-9 && t <= 30.0, "Gi* matches direct-formula oracle on 50 instances",
           fmt("max |dz| = %.3g, %.2f s", worst, t));
}

void moran_oracle() {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> size(10, 400);
    std::uniform_real_distribution<double> band(40.0, 400.0);
    double worst_i = 0.0, worst_var = 0.0;
    int done = 0;
    while (done < 20) {
        const auto pts = oracle::random_points(rng, size(rng), 1500.0);
        const auto x = oracle::random_normals(rng, pts.size());
        const double d = band(rng);
        const auto graph = build_graph(SpatialIndex(pts, d), d, false);
        if (graph.weight_sum() == 0) continue;
        const auto got = morans_i(x, graph);
        const auto want = oracle::morans_i(x, oracle::dense_weights(pts, d, false));
        worst_i = std::max(worst_i, std::fabs(got.index - want.index));
        worst_var = std::max(worst_var, std::fabs(got.variance - want.variance));
        ++done;
    }

    // Permutation check: analytic E[I], Var(I) and z against 99,999 shuffles.
    double worst_se = 0.0;
    for (auto [n, d, seed] : {std::tuple{50u, 250.0, 11u}, std::tuple{150u, 180.0, 12u}, std::tuple{300u, 120.0, 13u}}) {
        std::mt19937_64 prng(seed);
        const auto pts = oracle::random_points(prng, n, 1000.0);
        auto x = oracle::random_normals(prng, n);
        for (std::size_t i = 0; i < n; ++i) x[i] += pts[i].y / 800.0;
        const auto graph = build_graph(SpatialIndex(pts, d), d, false);
        const auto analytic = morans_i(x, graph);
        std::vector<std::vector<std::size_t>> adj(n);
        for (PointId i = 0; i < n; ++i) adj[i] = graph.neighbors(i);
        const double s0 = static_cast<double>(graph.weight_sum());
        constexpr int kPerms = 99'999;
        std::vector<double> sample(kPerms);
        auto y = x;
        for (auto& v : sample) {
            std::shuffle(y.begin(), y.end(), prng);
            v = oracle::moran_index(y, adj, s0);
        }
        double mean = 0.0, var = 0.0, m4 = 0.0;
        for (double v : sample) mean += v;
        mean /= kPerms;
        for (double v : sample) {
            var += (v - mean) * (v - mean);
            m4 += std::pow(v - mean, 4);
        }
        var /= kPerms - 1;
        m4 /= kPerms;
        const double pseudo_z = (analytic.index - mean) / std::sqrt(var);
        const double se_z =
            std::sqrt(1.0 / kPerms + 0.25 * pseudo_z * pseudo_z * (m4 - var * var) / (var * var * kPerms));
        worst_se = std::max({worst_se, std::fabs(mean - analytic.expected) / std::sqrt(var / kPerms),
                             std::fabs(var - analytic.variance) / std::sqrt((m4 - var * var) / kPerms),
                             std::fabs(pseudo_z - analytic.z) / se_z});
    }
    report(2, worst_i <= 1e-10 && worst_var <= 1e-10 && worst_se <= 3.0,
           "Moran's I and Var(I) match direct evaluation; analytic moments and z match permutations",
           fmt("max |dI| = %.3g, max |dVar| = %.3g, worst permutation deviation %.2f MC SE", worst_i, worst_var,
               worst_se));
}

void null_calibration() {
    Stopwatch clock;
    const auto sum = run_calibration(200, null_scenario(1, 500));
    const double t = clock.seconds();
    const bool pass = sum.failures == 0 && sum.mean_pre_fdr_rate >= 0.03 && sum.mean_pre_fdr_rate <= 0.08 &&
                      sum.mean_significant_fraction <= 0.02 && t <= 300.0;
    report(3, pass, "null calibration over 200 replicates of 500 points",
           fmt("pre-FDR rate %.4f, post-FDR fraction %.4f, %zu failures, %.1f s", sum.mean_pre_fdr_rate,
               sum.mean_significant_fraction, sum.failures, t));
}

void planted_recovery() {
    const auto sum = run_calibration(50, standard_scenario(1));
    std::size_t over = 0;
    for (const auto& r : sum.replicates) over += (r.background_fp_rate && *r.background_fp_rate > 0.02) ? 1 : 0;
    const bool pass = sum.failures == 0 && sum.mean_recovery && *sum.mean_recovery >= 0.90 &&
                      *sum.mean_background_fp_rate <= 0.02 && *sum.spots_match_rate >= 0.95;
    report(4, pass, "planted-cluster recovery over 50 seeded standard runs",
           fmt("mean recovery %.4f, mean background FP %.4f (runs above 2%%: %zu/50), two correct spots in %.0f%%",
               sum.mean_recovery.value_or(0.0), sum.mean_background_fp_rate.value_or(1.0), over,
               100.0 * sum.spots_match_rate.value_or(0.0)));
}

void band_sanity() {
    bool pass = true;
    std::string detail;
    const std::array<double, 3> radii = {200.0, 500.0, 1000.0};
    std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        double previous = 0.0;
        for (std::size_t k = 0; k < radii.size(); ++k) {
            const auto data = generate(standard_scenario(seed, radii[k]));
            const double band = analyze_reports(data.reports).hotspots.band;
            pass = pass && band > previous && band >= 0.5 * radii[k] && band <= 3.0 * radii[k];
            lo[k] = std::min(lo[k], band);
            hi[k] = std::max(hi[k], band);
            previous = band;
        }
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
        detail += fmt("%sr=%.0f: %.0f-%.0f m", k ? ", " : "", radii[k], lo[k], hi[k]);
    }
    report(5, pass, "bands strictly monotone in planted radius and within [0.5, 3]x radius (seeds 1-10)", detail);
}

void fdr_checks() {
    const auto level = fdr_correct(std::vector<double>{0.01, 0.02, 0.03, 0.5}, 0.05);
    const bool example = level.critical_p == 0.03 && level.rejected == 3 &&
                         level.significant == std::vector<bool>{true, true, true, false};
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::size_t> len(1, 300);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> p(len(rng));
        for (auto& v : p) v = u(rng) < 0.3 ? std::pow(u(rng), 5.0) : u(rng);
        const auto out = fdr_outcome(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (out.levels[2].significant[i] > out.levels[1].significant[i] ||
                out.levels[1].significant[i] > out.levels[0].significant[i]) {
                ++violations;
            }
        }
    }
    report(6, example && violations == 0, "BH hand example and nestedness over 1,000 random p-vectors",
           fmt("critical_p = %.2f, rejected = %zu, nestedness violations = %zu", level.critical_p, level.rejected,
               violations));
}

void kappa_checks() {
    RatingTable perfect(3, 3);
    for (unsigned c = 0; c < 3; ++c) {
        for (int k = 0; k < 4; ++k) {
            std::vector<unsigned> row(3, 0);
            row[c] = 3;
            perfect.add_item(row);
        }
    }
    const double k_perfect = fleiss_kappa(perfect).kappa;

    RatingTable random(17, 3);
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<std::size_t> pick(0, 16);
    for (int i = 0; i < 10'000; ++i) random.add_labels(std::vector<std::size_t>{pick(rng), pick(rng), pick(rng)});
    const double k_random = fleiss_kappa(random).kappa;

    RatingTable small(3, 3);
    small.add_item(std::vector<unsigned>{3, 0, 0});
    small.add_item(std::vector<unsigned>{2, 1, 0});
    small.add_item(std::vector<unsigned>{0, 2, 1});
    small.add_item(std::vector<unsigned>{1, 1, 1});
    const auto k_small = fleiss_kappa(small);
    const double err = std::max({std::fabs(k_small.kappa - 1.0 / 22.0), std::fabs(k_small.per_category[0] - 1.0 / 3.0),
                                 std::fabs(k_small.per_category[1] + 1.0 / 8.0),
                                 std::fabs(k_small.per_category[2] + 1.0 / 5.0)});
    report(7, k_perfect == 1.0 && std::fabs(k_random) < 0.05 && err <= 1e-12,
           "Fleiss' kappa: perfect agreement, random table, hand-evaluated table",
           fmt("perfect = %.17g, random = %.4f, hand-table error = %.3g", k_perfect, k_random, err));
}

void experience_checks() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> item(1.0, 5.0);
    double worst = 0.0, worst_perm = 0.0;
    for (int k = 0; k < 10'000; ++k) {
        EsmReport r;
        for (auto& v : r.items) v = item(rng);
        long double sum = 0.0L;
        for (double v : r.items) sum += v;
        const double score = experience_score(r);
        worst = std::max(worst, std::fabs(score - static_cast<double>(sum / 8.0L)));
        for (int p = 0; p < 5; ++p) {
            std::shuffle(r.items.begin(), r.items.end(), rng);
            worst_perm = std::max(worst_perm, std::fabs(experience_score(r) - score));
        }
    }
    report(8, worst <= 1e-12 && worst_perm <= 1e-12, "experience score is the item mean and permutation invariant",
           fmt("max |score - mean| = %.3g, max permutation change = %.3g over 10,000 reports", worst, worst_perm));
}

void affine_checks() {
    double worst = 0.0;
    bool same_spots = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto data = generate(standard_scenario(seed));
        const auto base = analyze_reports(data.reports);
        AnalysisConfig cfg;
        cfg.band = base.hotspots.band;
        for (auto [a, b] : {std::pair{2.0, -5.0}, std::pair{0.1, 10.0}, std::pair{37.5, 0.25}}) {
            std::vector<double> y;
            for (double v : base.scores) y.push_back(a * v + b);
            const auto moved = analyze_values(base.points, y, cfg);
            for (std::size_t i = 0; i < y.size(); ++i) {
                worst = std::max(worst, std::fabs(moved.gi[i].z - base.hotspots.gi[i].z));
            }
            const auto spots = group_spots(moved.gi, moved.graph, data.reports, base.points);
            same_spots = same_spots && spots.size() == base.spots.size();
            for (std::size_t k = 0; same_spots && k < spots.size(); ++k) {
                same_spots = spots[k].member_ids == base.spots[k].member_ids;
            }
        }
    }
    report(9, worst <= 1e-9 && same_spots, "Gi* z invariant under x -> a x + b (a > 0); spots unchanged",
           fmt("max |dz| = %.3g over 15 transforms, spot membership %s", worst, same_spots ? "identical" : "differs"));
}

void determinism(const fs::path& work) {
    fs::remove_all(work);
    fs::create_directories(work);
    std::ostringstream log;
    cli::SynthOptions s;
    s.output = work / "synthetic.csv";
    s.seed = 2024;
    bool ok = cli::run_synth(s, log, log) == 0;
    for (const char* run : {"run_a", "run_b"}) {
        cli::AnalyzeOptions a;
        a.input = s.output;
        a.output_dir = work / run;
        ok = ok && cli::run_analyze(a, log, log) == 0;
    }
    std::size_t identical = 0;
    for (const char* f : {"manifest.json", "points.geojson", "spots.geojson"}) {
        const auto x = slurp(work / "run_a" / f);
        identical += (!x.empty() && x == slurp(work / "run_b" / f)) ? 1 : 0;
    }
    report(10, ok && identical == 3, "two analyze runs on one synthetic file are byte-identical",
           fmt("%zu/3 artifacts identical", identical));
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "hotspot_acceptance";
    gi_oracle();
    moran_oracle();
    null_calibration();
    planted_recovery();
    band_sanity();
    fdr_checks();
    kappa_checks();
    experience_checks();
    affine_checks();
    determinism(work);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
