#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trendkit/errors.hpp"
#include "trendkit/normal.hpp"
#include "trendkit/sample.hpp"

namespace trendkit {

/// One group of equal values and its multiplicity (always >= 2).
struct tie_group {
    double value;
    std::size_t multiplicity;

    bool operator==(const tie_group&) const = default;
};

/// Every distinct value occurring at least twice in a series, ascending by
/// value. Equality is exact: input data are decimal readings and a tolerance
/// would be arbitrary.
struct tie_summary {
    std::vector<tie_group> groups;

    std::size_t group_count() const noexcept { return groups.size(); }
    bool empty() const noexcept { return groups.empty(); }
};

inline tie_summary summarize_ties(std::span<const double> values) {
    if (values.empty()) throw size_error("summarize_ties: need at least 1 value");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    tie_summary out;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
            continue;
        }
        if (run >= 2) out.groups.push_back({sorted[i - 1], run});
        run = 1;
    }
    return out;
}

inline tie_summary summarize_ties(const sample& s) { return summarize_ties(s.values()); }

/// Sum of sgn(x_j - x_i) over all ordered pairs i < j. Positive values
/// indicate an upward trend.
inline long long mk_s_statistic(const sample& s) {
    const auto x = s.values();
    if (x.size() < 2) throw size_error("mk_s_statistic: need at least 2 values");
    long long acc = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[j] > x[i])
                ++acc;
            else if (x[j] < x[i])
                --acc;
        }
    }
    return acc;
}

/// Null variance of S with the tie correction:
/// [n(n-1)(2n+5) - sum_k t_k(t_k-1)(2t_k+5)] / 18.
inline double mk_variance(std::size_t n, const tie_summary& ties) {
    if (n < 2) throw validation_error("mk_variance: need n >= 2");
    std::size_t tied_total = 0;
    double correction = 0.0;
    for (const tie_group& g : ties.groups) {
        if (g.multiplicity < 2)
            throw validation_error("mk_variance: tie multiplicity below 2");
        tied_total += g.multiplicity;
        const double t = static_cast<double>(g.multiplicity);
        correction += t * (t - 1.0) * (2.0 * t + 5.0);
    }
    if (tied_total > n)
        throw validation_error("mk_variance: tie multiplicities exceed sample size");
    const double nd = static_cast<double>(n);
    const double var = (nd * (nd - 1.0) * (2.0 * nd + 5.0) - correction) / 18.0;
    if (var < 0.0) throw validation_error("mk_variance: negative variance, ties inconsistent with n");
    return var;
}

/// Continuity-corrected standardization of S:
/// (S-1)/sqrt(Var) for S>0, 0 for S=0, (S+1)/sqrt(Var) for S<0.
inline double mk_z_statistic(long long s, double var_s) {
    if (s == 0) return 0.0;
    if (!(var_s > 0.0))
        throw degenerate_error("mk_z_statistic: zero variance with nonzero S");
    const double sd = std::sqrt(var_s);
    return s > 0 ? (static_cast<double>(s) - 1.0) / sd : (static_cast<double>(s) + 1.0) / sd;
}

struct kendall_tau_result {
    double tau_a = 0.0;
    double tau_b = 0.0;
    /// False when every value is tied; tau_b has no definition there and
    /// tau_a = 0 is returned with this flag cleared.
    bool tau_b_defined = true;
};

/// Kendall rank correlation against time order. tau_a ignores ties; tau_b
/// corrects the denominator for ties in the values (time is assumed untied).
inline kendall_tau_result kendall_tau(const sample& s) {
    if (s.size() < 2) throw size_error("kendall_tau: need at least 2 values");
    const long long S = mk_s_statistic(s);
    const double pairs = 0.5 * static_cast<double>(s.size()) * static_cast<double>(s.size() - 1);

    kendall_tau_result out;
    out.tau_a = static_cast<double>(S) / pairs;

    double tie_pairs = 0.0;
    for (const tie_group& g : summarize_ties(s).groups) {
        const double t = static_cast<double>(g.multiplicity);
        tie_pairs += 0.5 * t * (t - 1.0);
    }
    if (tie_pairs >= pairs) {
        // all values equal
        out.tau_b = 0.0;
        out.tau_b_defined = false;
        return out;
    }
    out.tau_b = static_cast<double>(S) / std::sqrt((pairs - tie_pairs) * pairs);
    return out;
}

/// The h/p/z/tau record of one Mann-Kendall test run.
struct trend_test_result {
    long long s = 0;
    double var_s = 0.0;
    double z = 0.0;
    double p_two_sided = 1.0;
    double tau_a = 0.0;
    double tau_b = 0.0;
    bool tau_b_defined = true;
    bool h = false;     ///< true when the no-trend null is rejected at alpha
    double alpha = 0.05;
};

/// Mann-Kendall trend test with tie-corrected variance, continuity-corrected
/// Z and two-sided normal p-value. A constant series is not an error: it
/// yields S=0, Z=0, p=1, h=false.
inline trend_test_result mann_kendall(const sample& s, double alpha = 0.05) {
    if (s.size() < 4)
        throw size_error("mann_kendall: need at least 4 values for the normal approximation");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("mann_kendall: alpha must lie in (0,1)");

    trend_test_result r;
    r.alpha = alpha;
    r.s = mk_s_statistic(s);
    const tie_summary ties = summarize_ties(s);
    r.var_s = mk_variance(s.size(), ties);
    r.z = (r.s == 0) ? 0.0 : mk_z_statistic(r.s, r.var_s);
    r.p_two_sided = normal_two_sided_p(r.z);
    r.h = r.p_two_sided < alpha;

    const kendall_tau_result tau = kendall_tau(s);
    r.tau_a = tau.tau_a;
    r.tau_b = tau.tau_b;
    r.tau_b_defined = tau.tau_b_defined;
    return r;
}

}  // namespace trendkit
