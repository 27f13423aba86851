#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trendkit/errors.hpp"
#include "trendkit/mann_kendall.hpp"
#include "trendkit/qq_plot.hpp"
#include "trendkit/shapiro_wilk.hpp"
#include "trendkit/theil_sen.hpp"
#include "trendkit/timeseries.hpp"

namespace trendkit {

namespace detail {

/// 6-significant-digit rendering: enough for the values these reports carry
/// without implying false precision.
inline std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

}  // namespace detail

/// Parameters a run was resolved with; embedded in every report so the run
/// can be reproduced.
struct run_params {
    double alpha = 0.05;
    double confidence = 0.95;
    std::string aggregation = "daily-mean";  ///< daily-mean | hourly-raw
    std::string kind = "station";            ///< station | region-wide
};

/// Everything one trend analysis produced, plus provenance metadata.
struct trend_report {
    std::string dataset;     ///< input descriptor (paths or region name)
    std::string input_hash;  ///< fnv1a64 hex of the raw input bytes
    std::size_t n = 0;       ///< analyzed series length
    run_params params;
    trend_test_result mk;
    sen_estimate sen;
    normality_result sw;
};

enum class report_format { json, csv, text };

inline report_format parse_report_format(std::string_view name) {
    if (name == "json") return report_format::json;
    if (name == "csv") return report_format::csv;
    if (name == "text") return report_format::text;
    throw validation_error("unknown report format '" + std::string(name) +
                           "' (expected json, csv or text)");
}

inline std::string_view report_format_extension(report_format f) {
    switch (f) {
        case report_format::json: return "json";
        case report_format::csv: return "csv";
        case report_format::text: return "txt";
    }
    return "txt";
}

/// Deterministic serialization of a trend report. Identical reports render
/// to identical bytes; numbers carry 6 significant digits.
inline std::string render_trend_report(const trend_report& r, report_format format) {
    using detail::fmt6;
    const std::string h = r.mk.h ? "true" : "false";

    switch (format) {
        case report_format::json: {
            std::string s = "{\n";
            s += "  \"dataset\": \"" + detail::json_escape(r.dataset) + "\",\n";
            s += "  \"input_hash\": \"" + r.input_hash + "\",\n";
            s += "  \"n\": " + std::to_string(r.n) + ",\n";
            s += "  \"kind\": \"" + detail::json_escape(r.params.kind) + "\",\n";
            s += "  \"aggregation\": \"" + detail::json_escape(r.params.aggregation) + "\",\n";
            s += "  \"alpha\": " + fmt6(r.mk.alpha) + ",\n";
            s += "  \"confidence\": " + fmt6(r.sen.confidence) + ",\n";
            s += "  \"s\": " + std::to_string(r.mk.s) + ",\n";
            s += "  \"var_s\": " + fmt6(r.mk.var_s) + ",\n";
            s += "  \"z\": " + fmt6(r.mk.z) + ",\n";
            s += "  \"p_two_sided\": " + fmt6(r.mk.p_two_sided) + ",\n";
            s += "  \"tau_a\": " + fmt6(r.mk.tau_a) + ",\n";
            s += "  \"tau_b\": " + fmt6(r.mk.tau_b) + ",\n";
            s += "  \"h\": " + h + ",\n";
            s += "  \"slope\": " + fmt6(r.sen.slope) + ",\n";
            s += "  \"intercept\": " + fmt6(r.sen.intercept) + ",\n";
            s += "  \"ci_lower\": " + fmt6(r.sen.ci_lower) + ",\n";
            s += "  \"ci_upper\": " + fmt6(r.sen.ci_upper) + ",\n";
            s += "  \"sw_w\": " + fmt6(r.sw.w) + ",\n";
            s += "  \"sw_p\": " + fmt6(r.sw.p_value) + "\n";
            s += "}\n";
            return s;
        }
        case report_format::csv: {
            std::string s =
                "s,var_s,z,p_two_sided,tau_a,tau_b,h,alpha,slope,intercept,ci_lower,ci_upper,"
                "sw_w,sw_p\n";
            s += std::to_string(r.mk.s) + "," + fmt6(r.mk.var_s) + "," + fmt6(r.mk.z) + "," +
                 fmt6(r.mk.p_two_sided) + "," + fmt6(r.mk.tau_a) + "," + fmt6(r.mk.tau_b) + "," +
                 h + "," + fmt6(r.mk.alpha) + "," + fmt6(r.sen.slope) + "," +
                 fmt6(r.sen.intercept) + "," + fmt6(r.sen.ci_lower) + "," +
                 fmt6(r.sen.ci_upper) + "," + fmt6(r.sw.w) + "," + fmt6(r.sw.p_value) + "\n";
            return s;
        }
        case report_format::text: {
            auto row = [](std::string_view param, std::string_view meaning,
                          const std::string& value) {
                std::string line = "  ";
                line += param;
                line.append(param.size() < 10 ? 10 - param.size() : 1, ' ');
                line += meaning;
                line.append(meaning.size() < 46 ? 46 - meaning.size() : 1, ' ');
                line += value;
                line += "\n";
                return line;
            };
            std::string s;
            s += "Mann-Kendall trend test\n";
            s += row("parameter", "significance", "value");
            s += row("h", "trend present at alpha=" + fmt6(r.mk.alpha), h);
            s += row("p", "two-sided p-value", fmt6(r.mk.p_two_sided));
            s += row("z", "standardized test statistic", fmt6(r.mk.z));
            s += row("tau", "rank correlation (tie-corrected)", fmt6(r.mk.tau_b));
            s += row("tau_a", "rank correlation (no tie correction)", fmt6(r.mk.tau_a));
            s += row("S", "pairwise sign sum", std::to_string(r.mk.s));
            s += row("var_S", "null variance of S", fmt6(r.mk.var_s));
            s += "\nSen slope estimate\n";
            s += row("slope", "median pairwise slope", fmt6(r.sen.slope));
            s += row("intercept", "median residual level", fmt6(r.sen.intercept));
            s += row("ci",
                     fmt6(r.sen.confidence * 100.0) + "% confidence interval",
                     "[" + fmt6(r.sen.ci_lower) + ", " + fmt6(r.sen.ci_upper) + "]");
            s += "\nShapiro-Wilk normality check\n";
            s += row("W", "order-statistic correlation", fmt6(r.sw.w));
            s += row("p", "normality p-value", fmt6(r.sw.p_value));
            s += "\n";
            s += "dataset:     " + r.dataset + "\n";
            s += "kind:        " + r.params.kind + "\n";
            s += "aggregation: " + r.params.aggregation + "\n";
            s += "n:           " + std::to_string(r.n) + "\n";
            s += "input_hash:  " + r.input_hash + "\n";
            return s;
        }
    }
    throw validation_error("render_trend_report: unknown format");
}

enum class plot_kind { qq, seasonal, annual_change };

using plot_data = std::variant<qq_data, std::vector<seasonal_mean>, std::vector<year_mean>>;

/// Plot-ready CSV for external tooling. Rows are ordered by the x
/// coordinate; an empty payload yields a header-only file.
inline std::string emit_plot_data(plot_kind kind, const plot_data& data) {
    using detail::fmt6;
    switch (kind) {
        case plot_kind::qq: {
            const auto* qq = std::get_if<qq_data>(&data);
            if (!qq) throw validation_error("emit_plot_data: qq kind needs qq_data");
            std::string s = "theoretical,sample\n";
            for (const qq_point& p : qq->points)
                s += fmt6(p.theoretical) + "," + fmt6(p.sample) + "\n";
            return s;
        }
        case plot_kind::seasonal: {
            const auto* rows = std::get_if<std::vector<seasonal_mean>>(&data);
            if (!rows)
                throw validation_error("emit_plot_data: seasonal kind needs seasonal means");
            std::string s = "season_year,season,mean_c\n";
            for (const seasonal_mean& m : *rows) {
                s += std::to_string(m.season_year) + "," + std::string(season_name(m.s)) + "," +
                     fmt6(m.mean_c) + "\n";
            }
            return s;
        }
        case plot_kind::annual_change: {
            const auto* rows = std::get_if<std::vector<year_mean>>(&data);
            if (!rows)
                throw validation_error("emit_plot_data: annual-change kind needs year means");
            std::string s = "year,mean_c\n";
            for (const year_mean& ym : *rows)
                s += std::to_string(ym.year) + "," + fmt6(ym.mean_c) + "\n";
            return s;
        }
    }
    throw validation_error("emit_plot_data: unknown kind");
}

/// Ranked region CSV (the decadal-change table shape).
inline std::string emit_region_changes_csv(std::span<const region_change> ranked) {
    std::string s = "region,change_c\n";
    for (const region_change& rc : ranked) {
        std::string region = rc.region;
        const bool quote = region.find(',') != std::string::npos ||
                           region.find('"') != std::string::npos;
        if (quote) {
            std::string q = "\"";
            for (char c : region) {
                if (c == '"') q += "\"\"";
                else q += c;
            }
            q += "\"";
            region = q;
        }
        s += region + "," + detail::fmt6(rc.change_c) + "\n";
    }
    return s;
}

}  // namespace trendkit
