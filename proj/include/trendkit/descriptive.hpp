#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "trendkit/errors.hpp"

namespace trendkit {

inline double mean(std::span<const double> data) {
    if (data.empty()) throw size_error("mean: empty input");
    double acc = 0.0;
    for (double v : data) acc += v;
    return acc / static_cast<double>(data.size());
}

/// Sample variance with the n-1 denominator (two-pass).
inline double sample_variance(std::span<const double> data) {
    if (data.size() < 2) throw size_error("sample_variance: need at least 2 values");
    const double m = mean(data);
    double acc = 0.0;
    for (double v : data) {
        const double d = v - m;
        acc += d * d;
    }
    return acc / static_cast<double>(data.size() - 1);
}

inline double sample_stddev(std::span<const double> data) {
    return std::sqrt(sample_variance(data));
}

/// Median of an ascending-sorted range: the middle element for odd lengths,
/// the midpoint mean of the two middle elements for even lengths.
inline double median_sorted(std::span<const double> sorted) {
    if (sorted.empty()) throw size_error("median: empty input");
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

inline double median(std::vector<double> data) {
    std::sort(data.begin(), data.end());
    return median_sorted(data);
}

}  // namespace trendkit
