#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "trendkit/errors.hpp"
#include "trendkit/normal.hpp"
#include "trendkit/sample.hpp"

namespace trendkit {

struct qq_point {
    double theoretical;  ///< expected normal quantile at the Blom position
    double sample;       ///< matching order statistic of the data
};

struct qq_data {
    std::vector<qq_point> points;  ///< ascending in both coordinates
};

/// Normal Q-Q plot data: the i-th order statistic paired with
/// Phi^-1((i - 0.375)/(n + 0.25)). The theoretical quantiles are built from
/// one half and mirrored, so they are antisymmetric about 0 exactly.
inline qq_data qq_points(std::span<const double> values) {
    if (values.empty()) throw size_error("qq_points: empty input");
    const std::size_t n = values.size();

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> theo(n, 0.0);
    const double denom = static_cast<double>(n) + 0.25;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double q = normal_quantile((static_cast<double>(i) + 1.0 - 0.375) / denom);
        theo[i] = q;
        theo[n - 1 - i] = -q;
    }
    // middle entry of an odd-length series stays exactly 0

    qq_data out;
    out.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.points.push_back({theo[i], sorted[i]});
    return out;
}

inline qq_data qq_points(const sample& s) { return qq_points(s.values()); }

}  // namespace trendkit
