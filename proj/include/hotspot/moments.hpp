#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "hotspot/error.hpp"

namespace hotspot {

/// Mean and centered values of an attribute; two-pass for stability under
/// large offsets.
struct Centered {
    double mean = 0.0;
    std::vector<double> dev;  // x_i - mean
    double m2 = 0.0;          // sum of dev^2
    double m4 = 0.0;          // sum of dev^4
};

inline Centered center(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyDataset, "no values");
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "non-finite value");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) throw Error(ErrorCode::DegenerateValues, "all values are identical (zero variance)");

    Centered c;
    for (double v : values) c.mean += v;
    c.mean /= static_cast<double>(values.size());
    c.dev.reserve(values.size());
    for (double v : values) {
        const double d = v - c.mean;
        c.dev.push_back(d);
        c.m2 += d * d;
        c.m4 += d * d * d * d;
    }
    if (!(c.m2 > 0.0)) throw Error(ErrorCode::DegenerateValues, "zero variance");
    return c;
}

}  // namespace hotspot
