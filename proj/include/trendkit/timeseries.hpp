#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trendkit/calendar.hpp"
#include "trendkit/descriptive.hpp"
#include "trendkit/errors.hpp"

namespace trendkit {

/// Lowest/highest temperature ever recorded at a terrestrial station, with
/// margin; anything outside is a sensor sentinel or corruption.
constexpr double min_plausible_temp_c = -90.0;
constexpr double max_plausible_temp_c = 60.0;

struct observation {
    civil_time at;
    double value = 0.0;  ///< degrees C

    bool operator==(const observation&) const = default;
};

inline bool value_in_bounds(double value_c) {
    return std::isfinite(value_c) && value_c >= min_plausible_temp_c &&
           value_c <= max_plausible_temp_c;
}

/// Delhi's seasons in chronological order within a season year.
enum class season { winter, summer, monsoon, post_monsoon };

inline std::string_view season_name(season s) {
    switch (s) {
        case season::winter: return "Winter";
        case season::summer: return "Summer";
        case season::monsoon: return "Monsoon";
        case season::post_monsoon: return "PostMonsoon";
    }
    return "?";
}

struct season_label {
    season s = season::winter;
    /// December belongs to the following year's winter, so every winter is
    /// one contiguous December-February block.
    int season_year = 0;

    friend auto operator<=>(const season_label&, const season_label&) = default;
};

/// Month-based season classification:
/// summer March-June, monsoon July-September, post-monsoon October-November,
/// winter December-February. March rides with the hot-season block so the
/// four seasons cover all twelve months.
inline season_label classify_season(const civil_time& t) {
    if (!is_valid(t)) throw validation_error("classify_season: invalid date");
    switch (t.month) {
        case 12: return {season::winter, t.year + 1};
        case 1:
        case 2: return {season::winter, t.year};
        case 3:
        case 4:
        case 5:
        case 6: return {season::summer, t.year};
        case 7:
        case 8:
        case 9: return {season::monsoon, t.year};
        default: return {season::post_monsoon, t.year};
    }
}

/// Per-year extremes and dispersion (sample sd; 0 for a single observation).
struct annual_summary {
    int year = 0;
    double t_max = 0.0;
    double t_min = 0.0;
    double std_dev = 0.0;
    std::size_t count = 0;

    bool operator==(const annual_summary&) const = default;
};

inline std::vector<annual_summary> aggregate_annual(std::span<const observation> obs) {
    if (obs.empty()) throw size_error("aggregate_annual: empty input");
    std::map<int, std::vector<double>> by_year;
    for (const observation& o : obs) {
        if (!std::isfinite(o.value))
            throw validation_error("aggregate_annual: non-finite value");
        by_year[o.at.year].push_back(o.value);
    }
    std::vector<annual_summary> out;
    out.reserve(by_year.size());
    for (auto& [year, vals] : by_year) {
        annual_summary s;
        s.year = year;
        s.count = vals.size();
        s.t_max = *std::max_element(vals.begin(), vals.end());
        s.t_min = *std::min_element(vals.begin(), vals.end());
        s.std_dev = vals.size() >= 2 ? sample_stddev(vals) : 0.0;
        out.push_back(s);
    }
    return out;
}

/// Mean value of one (season, season year) group.
struct seasonal_mean {
    int season_year = 0;
    season s = season::winter;
    double mean_c = 0.0;
    std::size_t count = 0;

    bool operator==(const seasonal_mean&) const = default;
};

/// Group observations by (season year, season) and average each group.
/// Output is ordered chronologically; empty groups are absent.
inline std::vector<seasonal_mean> aggregate_seasonal(std::span<const observation> obs) {
    if (obs.empty()) throw size_error("aggregate_seasonal: empty input");
    std::map<std::pair<int, int>, std::pair<double, std::size_t>> groups;
    for (const observation& o : obs) {
        if (!std::isfinite(o.value))
            throw validation_error("aggregate_seasonal: non-finite value");
        const season_label label = classify_season(o.at);
        auto& [sum, count] = groups[{label.season_year, static_cast<int>(label.s)}];
        sum += o.value;
        ++count;
    }
    std::vector<seasonal_mean> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        out.push_back({key.first, static_cast<season>(key.second),
                       acc.first / static_cast<double>(acc.second), acc.second});
    }
    return out;
}

struct year_mean {
    int year = 0;
    double mean_c = 0.0;

    bool operator==(const year_mean&) const = default;
};

/// Mean over the most recent decade [end_year-9, end_year] minus the mean
/// over the decade before it [end_year-19, end_year-10]. Both windows must
/// be fully covered.
inline double decadal_change(std::span<const year_mean> annual_means, int end_year) {
    std::map<int, double> by_year;
    for (const year_mean& ym : annual_means) {
        if (!by_year.emplace(ym.year, ym.mean_c).second)
            throw validation_error("decadal_change: duplicate year " + std::to_string(ym.year));
    }
    std::vector<int> missing;
    for (int y = end_year - 19; y <= end_year; ++y) {
        if (!by_year.contains(y)) missing.push_back(y);
    }
    if (!missing.empty())
        throw coverage_error("decadal_change: incomplete decade coverage", std::move(missing));

    double earlier = 0.0, later = 0.0;
    for (int y = end_year - 19; y <= end_year - 10; ++y) earlier += by_year[y];
    for (int y = end_year - 9; y <= end_year; ++y) later += by_year[y];
    return later / 10.0 - earlier / 10.0;
}

struct region_change {
    std::string region;
    double change_c = 0.0;

    bool operator==(const region_change&) const = default;
};

/// Order regions by descending change; equal changes break ties by region
/// name ascending so the ranking is deterministic.
inline std::vector<region_change> rank_regions(std::vector<region_change> changes) {
    if (changes.empty()) throw size_error("rank_regions: empty input");
    std::set<std::string_view> seen;
    for (const region_change& rc : changes) {
        if (!std::isfinite(rc.change_c))
            throw validation_error("rank_regions: non-finite change for " + rc.region);
        if (!seen.insert(rc.region).second)
            throw validation_error("rank_regions: duplicate region " + rc.region);
    }
    std::sort(changes.begin(), changes.end(), [](const region_change& a, const region_change& b) {
        if (a.change_c != b.change_c) return a.change_c > b.change_c;
        return a.region < b.region;
    });
    return changes;
}

/// Collapse observations to one daily-mean observation per calendar date
/// (timestamped at midnight), ordered by date.
inline std::vector<observation> daily_means(std::span<const observation> obs) {
    std::map<std::array<int, 3>, std::pair<double, std::size_t>> days;
    for (const observation& o : obs) {
        auto& [sum, count] = days[{o.at.year, o.at.month, o.at.day}];
        sum += o.value;
        ++count;
    }
    std::vector<observation> out;
    out.reserve(days.size());
    for (const auto& [key, acc] : days) {
        out.push_back({civil_time{key[0], key[1], key[2], 0, 0},
                       acc.first / static_cast<double>(acc.second)});
    }
    return out;
}

/// Per-year arithmetic means, ordered by year.
inline std::vector<year_mean> annual_means(std::span<const observation> obs) {
    std::map<int, std::pair<double, std::size_t>> years;
    for (const observation& o : obs) {
        auto& [sum, count] = years[o.at.year];
        sum += o.value;
        ++count;
    }
    std::vector<year_mean> out;
    out.reserve(years.size());
    for (const auto& [year, acc] : years)
        out.push_back({year, acc.first / static_cast<double>(acc.second)});
    return out;
}

}  // namespace trendkit
