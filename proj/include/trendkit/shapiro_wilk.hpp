#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "trendkit/errors.hpp"
#include "trendkit/normal.hpp"
#include "trendkit/sample.hpp"

namespace trendkit {

struct normality_result {
    double w = 0.0;        ///< Shapiro-Wilk W statistic, in (0, 1]
    double p_value = 1.0;  ///< probability of a W this small under normality

    /// Normality is not rejected at the given level.
    bool normal_at(double alpha) const { return p_value >= alpha; }
};

namespace detail {

// Ascending-order polynomial evaluation: c[0] + c[1]*x + c[2]*x^2 + ...
template <std::size_t N>
inline double poly(const double (&c)[N], double x) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

}  // namespace detail

/// Shapiro-Wilk normality test via Royston's polynomial approximation,
/// valid for 3 <= n <= 5000.
///
/// W is the squared correlation between the sample order statistics and the
/// expected normal order-statistic weights; the p-value comes from Royston's
/// normalizing transformation of ln(1 - W).
inline normality_result shapiro_wilk(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3 || n > 5000)
        throw size_error("shapiro_wilk: supported sample size is 3..5000");

    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double range = x[n - 1] - x[0];
    if (!(range > 1e-19))
        throw degenerate_error("shapiro_wilk: zero-range sample");

    // Order-statistic weights a[i], antisymmetric about the middle. The two
    // extreme weights carry Royston's small-sample polynomial corrections.
    static constexpr double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static constexpr double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};

    std::vector<double> a(n, 0.0);
    if (n == 3) {
        a[0] = -std::sqrt(0.5);
        a[2] = std::sqrt(0.5);
    } else {
        const double an25 = static_cast<double>(n) + 0.25;
        const std::size_t half = n / 2;
        std::vector<double> m(half);  // negative-side Blom scores
        double summ2 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            m[i] = normal_quantile((static_cast<double>(i) + 1.0 - 0.375) / an25);
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(static_cast<double>(n));

        const double a1 = detail::poly(c1, rsn) - m[0] / ssumm2;
        std::size_t interior_from;
        double fac;
        if (n > 5) {
            const double a2 = detail::poly(c2, rsn) - m[1] / ssumm2;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = -a2;
            a[n - 2] = a2;
            interior_from = 3;
        } else {
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
            interior_from = 2;
        }
        a[0] = -a1;
        a[n - 1] = a1;
        for (std::size_t i = interior_from; i <= half; ++i) {
            a[i - 1] = m[i - 1] / fac;
            a[n - i] = -m[i - 1] / fac;
        }
    }

    // Squared correlation between weights and scaled order statistics,
    // evaluated as 1 - W to keep precision for W near 1.
    double sx = 0.0, sa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i] / range;
        sa += a[i];
    }
    sx /= static_cast<double>(n);
    sa /= static_cast<double>(n);
    double ssx = 0.0, ssa = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] / range - sx;
        const double da = a[i] - sa;
        ssx += dx * dx;
        ssa += da * da;
        sax += da * dx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);

    normality_result out;
    out.w = 1.0 - w1;

    if (n == 3) {
        static constexpr double six_over_pi = 1.90985931710274380436;
        static constexpr double asin_sqrt_3_4 = 1.04719755119659774615;
        out.p_value = six_over_pi * (std::asin(std::sqrt(out.w)) - asin_sqrt_3_4);
        out.p_value = std::clamp(out.p_value, 0.0, 1.0);
        return out;
    }

    static constexpr double c3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[3] = {-0.4803, -0.082676, 0.0030302};
    static constexpr double g[2] = {-2.273, 0.459};

    const double nd = static_cast<double>(n);
    double y = w1 > 0.0 ? std::log(w1) : -std::numeric_limits<double>::infinity();
    double mu, sigma;
    if (n <= 11) {
        const double gamma = detail::poly(g, nd);
        if (y >= gamma) {
            out.p_value = 1e-99;
            return out;
        }
        y = -std::log(gamma - y);
        mu = detail::poly(c3, nd);
        sigma = std::exp(detail::poly(c4, nd));
    } else {
        const double log_n = std::log(nd);
        mu = detail::poly(c5, log_n);
        sigma = std::exp(detail::poly(c6, log_n));
    }
    const double z = (y - mu) / sigma;
    out.p_value = std::clamp(0.5 * std::erfc(z * 0.7071067811865475244), 0.0, 1.0);
    return out;
}

inline normality_result shapiro_wilk(const sample& s) { return shapiro_wilk(s.values()); }

}  // namespace trendkit
