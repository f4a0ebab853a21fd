#pragma once

#include <cmath>
#include <numbers>

namespace hotspot {

inline double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// 2 * (1 - Phi(|z|)), computed without cancellation in the tail.
inline double two_sided_p(double z) noexcept { return std::erfc(std::fabs(z) / std::numbers::sqrt2); }

}  // namespace hotspot
