#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/gi_star.hpp"

namespace hotspot {

/// Benjamini-Hochberg outcome at one alpha level.
struct FdrLevel {
    double alpha = 0.0;
    double critical_p = 0.0;   // largest rejected p, 0 when nothing is rejected
    std::size_t rejected = 0;
    std::vector<bool> significant;  // indexed by point id
};

/// Benjamini-Hochberg step-up: sort p ascending (ties by id), reject the
/// first k where k is the largest rank with p_(k) <= k alpha / m.
inline FdrLevel fdr_correct(std::span<const double> p_values, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidPValue, "p-value outside [0, 1]");
    }
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    std::size_t k = 0;
    for (std::size_t rank = m; rank >= 1; --rank) {
        const double threshold = static_cast<double>(rank) * alpha / static_cast<double>(m);
        if (p_values[order[rank - 1]] <= threshold) {
            k = rank;
            break;
        }
    }

    FdrLevel level;
    level.alpha = alpha;
    level.rejected = k;
    level.significant.assign(m, false);
    if (k > 0) level.critical_p = p_values[order[k - 1]];
    for (std::size_t r = 0; r < k; ++r) level.significant[order[r]] = true;
    return level;
}

inline constexpr std::array<double, 3> kAlphaLevels = {0.10, 0.05, 0.01};

/// BH at 90%, 95% and 99% confidence, in that order.
struct FdrOutcome {
    std::array<FdrLevel, 3> levels;

    [[nodiscard]] const FdrLevel& at_alpha(double alpha) const {
        for (const auto& l : levels) {
            if (l.alpha == alpha) return l;
        }
        throw Error(ErrorCode::InvalidConfig, "alpha level not computed");
    }
};

inline FdrOutcome fdr_outcome(std::span<const double> p_values) {
    FdrOutcome out;
    for (std::size_t i = 0; i < kAlphaLevels.size(); ++i) out.levels[i] = fdr_correct(p_values, kAlphaLevels[i]);
    return out;
}

inline std::vector<double> p_values_of(std::span<const GiResult> gi) {
    std::vector<double> p;
    p.reserve(gi.size());
    for (const auto& r : gi) p.push_back(r.p_two_sided);
    return p;
}

/// Confidence bin per point: +/-3 at 99%, +/-2 at 95%, +/-1 at 90%, else 0,
/// signed by z.
inline void classify(std::span<GiResult> gi, const FdrOutcome& fdr) {
    for (const auto& level : fdr.levels) {
        if (level.significant.size() != gi.size()) {
            throw Error(ErrorCode::InputMismatch, "FDR outcome and Gi* results differ in length");
        }
    }
    for (std::size_t i = 0; i < gi.size(); ++i) {
        int magnitude = 0;
        if (fdr.levels[2].significant[i]) {
            magnitude = 3;
        } else if (fdr.levels[1].significant[i]) {
            magnitude = 2;
        } else if (fdr.levels[0].significant[i]) {
            magnitude = 1;
        }
        const int sign = gi[i].z > 0.0 ? 1 : (gi[i].z < 0.0 ? -1 : 0);
        gi[i].bin = sign * magnitude;
    }
}

/// Minimum |bin| for a confidence percentage (90, 95, 99).
inline int bin_for_confidence(int confidence) {
    switch (confidence) {
        case 90: return 1;
        case 95: return 2;
        case 99: return 3;
        default: throw Error(ErrorCode::InvalidConfig, "confidence must be 90, 95 or 99");
    }
}

}  // namespace hotspot
