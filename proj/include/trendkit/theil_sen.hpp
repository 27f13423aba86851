#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "trendkit/descriptive.hpp"
#include "trendkit/errors.hpp"
#include "trendkit/mann_kendall.hpp"
#include "trendkit/normal.hpp"
#include "trendkit/sample.hpp"

namespace trendkit {

namespace detail {

// All N = n(n-1)/2 pairwise slopes (x_k - x_j)/(t_k - t_j), ascending.
// The quadratic blow-up is capped: beyond ~10k points the slope list no
// longer fits comfortably in memory and callers should aggregate first.
inline std::vector<double> pairwise_slopes_sorted(const sample& s) {
    if (!s.has_times())
        throw validation_error("theil_sen: sample must carry time coordinates");
    const auto x = s.values();
    const auto t = s.times();
    if (x.size() < 2) throw size_error("theil_sen: need at least 2 values");
    constexpr std::size_t max_points = 10000;
    if (x.size() > max_points)
        throw size_error("theil_sen: series longer than 10000 points; aggregate before fitting");

    std::vector<double> slopes;
    slopes.reserve(x.size() * (x.size() - 1) / 2);
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        for (std::size_t k = j + 1; k < x.size(); ++k) {
            slopes.push_back((x[k] - x[j]) / (t[k] - t[j]));
        }
    }
    std::sort(slopes.begin(), slopes.end());
    return slopes;
}

// Ordered-statistic lookup with 1-based fractional rank: linear interpolation
// between adjacent order statistics, clamped to the extremes.
inline double slope_at_rank(std::span<const double> sorted, double rank) {
    const double n = static_cast<double>(sorted.size());
    if (rank <= 1.0) return sorted.front();
    if (rank >= n) return sorted.back();
    const double floor_rank = std::floor(rank);
    const std::size_t lo = static_cast<std::size_t>(floor_rank) - 1;
    const double frac = rank - floor_rank;
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

struct rank_pair {
    double lower;
    double upper;
};

// Slope-list ranks bounding the interval: M1 = (N - C_alpha)/2 and
// M2 + 1 = (N + C_alpha)/2 + 1.
inline rank_pair interval_ranks(std::size_t n_pairs, double var_s, double confidence) {
    const double c_alpha = normal_quantile(0.5 + 0.5 * confidence) * std::sqrt(var_s);
    const double n = static_cast<double>(n_pairs);
    return {0.5 * (n - c_alpha), 0.5 * (n + c_alpha) + 1.0};
}

}  // namespace detail

/// Sen's slope: the exact median of all pairwise slopes.
inline double theil_sen_slope(const sample& s) {
    const std::vector<double> slopes = detail::pairwise_slopes_sorted(s);
    return median_sorted(slopes);
}

/// Intercept companion to the Sen slope: median over i of (x_i - slope*t_i).
inline double sen_intercept(const sample& s, double slope) {
    if (!s.has_times())
        throw validation_error("sen_intercept: sample must carry time coordinates");
    const auto x = s.values();
    const auto t = s.times();
    if (x.size() < 2) throw size_error("sen_intercept: need at least 2 values");
    std::vector<double> residuals(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) residuals[i] = x[i] - slope * t[i];
    return median(std::move(residuals));
}

struct confidence_interval {
    double lower;
    double upper;
};

/// Nonparametric confidence interval for the Sen slope.
///
/// C_alpha = Z_{1-alpha/2} * sqrt(Var(S)); the bounds are the ordered slopes
/// at ranks M1 = (N - C_alpha)/2 and M2 + 1 = (N + C_alpha)/2 + 1, with
/// linear interpolation at fractional ranks and clamping to the extreme
/// slopes when a rank falls outside [1, N].
inline confidence_interval sen_confidence_interval(const sample& s, double confidence = 0.95) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw validation_error("sen_confidence_interval: confidence must lie in (0,1)");
    if (s.size() < 4) throw size_error("sen_confidence_interval: need at least 4 values");

    const std::vector<double> slopes = detail::pairwise_slopes_sorted(s);
    const double var_s = mk_variance(s.size(), summarize_ties(s));
    const detail::rank_pair ranks = detail::interval_ranks(slopes.size(), var_s, confidence);
    return {detail::slope_at_rank(slopes, ranks.lower), detail::slope_at_rank(slopes, ranks.upper)};
}

/// Combined Sen estimate: slope, intercept and confidence bounds.
struct sen_estimate {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    double confidence = 0.95;
    std::size_t n_pairs = 0;
};

inline sen_estimate theil_sen(const sample& s, double confidence = 0.95) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw validation_error("theil_sen: confidence must lie in (0,1)");
    if (s.size() < 4) throw size_error("theil_sen: need at least 4 values");

    const std::vector<double> slopes = detail::pairwise_slopes_sorted(s);
    sen_estimate est;
    est.slope = median_sorted(slopes);
    est.intercept = sen_intercept(s, est.slope);
    const double var_s = mk_variance(s.size(), summarize_ties(s));
    const detail::rank_pair ranks = detail::interval_ranks(slopes.size(), var_s, confidence);
    est.ci_lower = detail::slope_at_rank(slopes, ranks.lower);
    est.ci_upper = detail::slope_at_rank(slopes, ranks.upper);
    est.confidence = confidence;
    est.n_pairs = slopes.size();
    return est;
}

}  // namespace trendkit
