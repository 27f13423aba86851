// Acceptance suite: every release criterion as one PASS/FAIL line, runnable
// singly (argv[1] = criterion name) or all together (no arguments).
//
// The oracles here are written from scratch and stay independent of the
// library code paths they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "shapiro_cases.h"
#include "trendkit/trendkit.hpp"

using namespace trendkit;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// ---- independent oracles ---------------------------------------------------

long long oracle_pair_sign_sum(const std::vector<double>& x) {
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[j] > x[i]) ++s;
            if (x[j] < x[i]) --s;
        }
    }
    return s;
}

double oracle_median_pair_slope(const std::vector<double>& t, const std::vector<double>& x) {
    std::vector<double> slopes;
    for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t k = j + 1; k < x.size(); ++k)
            slopes.push_back((x[k] - x[j]) / (t[k] - t[j]));
    }
    std::sort(slopes.begin(), slopes.end());
    const std::size_t n = slopes.size();
    return n % 2 == 1 ? slopes[n / 2] : 0.5 * (slopes[n / 2 - 1] + slopes[n / 2]);
}

// ---- criteria ---------------------------------------------------------------

bool oracle_equivalence() {
    const auto start = clock_type::now();
    std::mt19937 rng(1729);
    std::uniform_int_distribution<std::size_t> len(4, 12);
    std::uniform_int_distribution<int> small_int(0, 5);
    std::uniform_real_distribution<double> wide(-50.0, 50.0);
    std::bernoulli_distribution pick_tied(0.5);

    for (int round = 0; round < 500; ++round) {
        const std::size_t n = len(rng);
        std::vector<double> x(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = pick_tied(rng) ? static_cast<double>(small_int(rng)) : wide(rng);
            t[i] = static_cast<double>(i + 1);
        }
        if (mk_s_statistic(sample(x)) != oracle_pair_sign_sum(x)) {
            std::printf("  round %d: S mismatch\n", round);
            return false;
        }
        if (theil_sen_slope(sample(t, x)) != oracle_median_pair_slope(t, x)) {
            std::printf("  round %d: slope mismatch\n", round);
            return false;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 5.0) {
        std::printf("  too slow: %.2f s\n", elapsed);
        return false;
    }
    return true;
}

bool table3_consistency() {
    const double p = normal_two_sided_p(3.771);
    const bool ok = std::fabs(p - 0.000162) <= 2e-6;
    if (!ok) std::printf("  p(3.771) = %.9f\n", p);
    return ok;
}

bool no_tie_variance() {
    for (std::size_t n = 2; n <= 1000; ++n) {
        const double nd = static_cast<double>(n);
        const double closed_form = nd * (nd - 1.0) * (2.0 * nd + 5.0) / 18.0;
        if (mk_variance(n, {}) != closed_form) {
            std::printf("  n=%zu: %.17g != %.17g\n", n, mk_variance(n, {}), closed_form);
            return false;
        }
    }
    return true;
}

bool invariance_suite() {
    const auto start = clock_type::now();
    std::mt19937 rng(86);
    std::uniform_int_distribution<std::size_t> len(8, 40);
    std::uniform_int_distribution<int> grid(-400, 400);
    std::uniform_int_distribution<int> shift_grid(-40, 40);

    auto rel_close = [](double a, double b) {
        const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
        return std::fabs(a - b) <= 1e-9 * scale;
    };

    for (int round = 0; round < 1000; ++round) {
        const std::size_t n = len(rng);
        std::vector<double> x(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 0.25 * grid(rng);  // exact binary fractions keep ties stable
            t[i] = static_cast<double>(i + 1);
        }
        const double c = 0.25 * shift_grid(rng);

        const trend_test_result base = mann_kendall(sample(x), 0.05);
        const double slope = theil_sen_slope(sample(t, x));

        std::vector<double> shifted(n), negated(n), t_scaled(n);
        for (std::size_t i = 0; i < n; ++i) {
            shifted[i] = x[i] + c;
            negated[i] = -x[i];
            t_scaled[i] = 2.0 * t[i];
        }

        const trend_test_result shf = mann_kendall(sample(shifted), 0.05);
        if (shf.s != base.s || shf.var_s != base.var_s || !rel_close(shf.z, base.z) ||
            !rel_close(shf.p_two_sided, base.p_two_sided) || !rel_close(shf.tau_a, base.tau_a) ||
            !rel_close(shf.tau_b, base.tau_b)) {
            std::printf("  round %d: shift invariance broken\n", round);
            return false;
        }
        if (theil_sen_slope(sample(t, shifted)) != slope) {
            std::printf("  round %d: slope changed under shift\n", round);
            return false;
        }

        const trend_test_result neg = mann_kendall(sample(negated), 0.05);
        if (neg.s != -base.s || !rel_close(neg.p_two_sided, base.p_two_sided)) {
            std::printf("  round %d: negation antisymmetry broken\n", round);
            return false;
        }
        if (!rel_close(theil_sen_slope(sample(t, negated)), -slope)) {
            std::printf("  round %d: slope not antisymmetric\n", round);
            return false;
        }

        if (!rel_close(theil_sen_slope(sample(t_scaled, x)), slope / 2.0)) {
            std::printf("  round %d: time-scale covariance broken\n", round);
            return false;
        }
        const trend_test_result rescaled = mann_kendall(sample(t_scaled, x), 0.05);
        if (rescaled.s != base.s || rescaled.z != base.z ||
            rescaled.p_two_sided != base.p_two_sided || rescaled.tau_b != base.tau_b) {
            std::printf("  round %d: MK result changed under time rescale\n", round);
            return false;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) {
        std::printf("  too slow: %.2f s\n", elapsed);
        return false;
    }
    return true;
}

bool normal_utilities() {
    if (std::fabs(normal_quantile(0.975) - 1.959964) > 1e-5) {
        std::printf("  quantile(0.975) = %.9f\n", normal_quantile(0.975));
        return false;
    }
    if (normal_cdf(0.0) != 0.5) {
        std::printf("  cdf(0) = %.17g\n", normal_cdf(0.0));
        return false;
    }
    const int grid = 1000;
    const double lo = 1e-6, hi = 1.0 - 1e-6;
    for (int i = 0; i < grid; ++i) {
        const double p = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
        const double round_trip = normal_cdf(normal_quantile(p));
        if (std::fabs(round_trip - p) > 1e-8) {
            std::printf("  round-trip error %.3g at p=%.9f\n", std::fabs(round_trip - p), p);
            return false;
        }
    }
    return true;
}

bool shapiro_reference() {
    bool ok = true;
    for (const shapiro_case& c : shapiro_reference_cases()) {
        const normality_result r = shapiro_wilk(c.values);
        if (std::fabs(r.w - c.w_ref) > 1e-3) {
            std::printf("  %s: W %.6f vs reference %.6f\n", c.name, r.w, c.w_ref);
            ok = false;
        }
        if (std::fabs(r.p_value - c.p_ref) > 2e-3) {
            std::printf("  %s: p %.6f vs reference %.6f\n", c.name, r.p_value, c.p_ref);
            ok = false;
        }
    }
    return ok;
}

bool decadal_synthetic() {
    std::vector<year_mean> linear;
    for (int y = 2001; y <= 2020; ++y) linear.push_back({y, 25.0 + 0.05 * (y - 2001)});
    const double change = decadal_change(linear, 2020);
    if (change != 0.5) {
        std::printf("  decadal change %.17g != 0.5\n", change);
        return false;
    }
    return true;
}

bool trend_power() {
    const auto start = clock_type::now();
    std::mt19937 rng(40);
    std::normal_distribution<double> noise(0.0, 1.0);
    const int trials = 200;
    const std::size_t n = 40;

    auto rejection_rate = [&](double slope) {
        int rejected = 0;
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = slope * static_cast<double>(i) + noise(rng);
            if (mann_kendall(sample(x), 0.05).h) ++rejected;
        }
        return static_cast<double>(rejected) / trials;
    };

    const double power = rejection_rate(0.02);
    const double false_positives = rejection_rate(0.0);
    const double elapsed = seconds_since(start);

    std::printf("  slope 0.02/step: rejected %.1f%% (need >= 60%%)\n", 100.0 * power);
    std::printf("  zero slope:      rejected %.1f%% (need <= 7%%)\n", 100.0 * false_positives);
    if (elapsed >= 30.0) {
        std::printf("  too slow: %.2f s\n", elapsed);
        return false;
    }
    return power >= 0.60 && false_positives <= 0.07;
}

struct criterion {
    const char* name;
    std::function<bool()> check;
};

const std::vector<criterion>& criteria() {
    static const std::vector<criterion> list = {
        {"oracle-equivalence", oracle_equivalence},
        {"table3-consistency", table3_consistency},
        {"no-tie-variance", no_tie_variance},
        {"invariance-suite", invariance_suite},
        {"normal-utilities", normal_utilities},
        {"shapiro-reference", shapiro_reference},
        {"decadal-synthetic", decadal_synthetic},
        {"trend-power", trend_power},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    int failures = 0;
    bool matched = false;
    for (const criterion& c : criteria()) {
        if (argc > 1 && std::strcmp(argv[1], c.name) != 0) continue;
        matched = true;
        const bool ok = c.check();
        std::printf("%s - %s\n", ok ? "PASS" : "FAIL", c.name);
        if (!ok) ++failures;
    }
    if (!matched) {
        std::printf("unknown criterion '%s'\n", argv[1]);
        return 64;
    }
    return failures;
}
