#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trendkit/descriptive.hpp"
#include "trendkit/errors.hpp"
#include "trendkit/sample.hpp"

namespace trendkit {

/// Series of (x_i - mean)/sd departures plus the moments they were built
/// from. By construction the output has mean 0 and sample sd 1.
struct anomaly_series {
    std::vector<double> anomalies;
    double source_mean = 0.0;
    double source_sd = 0.0;
};

inline anomaly_series standardized_anomalies(std::span<const double> values) {
    if (values.size() < 2) throw size_error("standardized_anomalies: need at least 2 values");
    anomaly_series out;
    out.source_mean = mean(values);
    out.source_sd = sample_stddev(values);
    if (!(out.source_sd > 0.0))
        throw degenerate_error("standardized_anomalies: constant series has zero deviation");
    out.anomalies.reserve(values.size());
    for (double v : values) out.anomalies.push_back((v - out.source_mean) / out.source_sd);
    return out;
}

inline anomaly_series standardized_anomalies(const sample& s) {
    return standardized_anomalies(s.values());
}

}  // namespace trendkit
