#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trendkit/calendar.hpp"
#include "trendkit/csv.hpp"
#include "trendkit/errors.hpp"
#include "trendkit/timeseries.hpp"

namespace trendkit {

/// What cleaning did to one input: counts plus 1-based line references.
/// Always: records_out == rows_in - duplicates_removed - rows_rejected.
struct cleaning_report {
    std::size_t rows_in = 0;
    std::size_t records_out = 0;
    std::size_t duplicates_removed = 0;
    std::size_t nulls_encountered = 0;
    std::size_t rows_rejected = 0;
    std::vector<std::size_t> duplicate_lines;
    std::vector<std::size_t> null_lines;      ///< subset of rejected_lines for row data
    std::vector<std::size_t> rejected_lines;  ///< every dropped non-duplicate row
    std::vector<std::size_t> conflict_lines;  ///< same timestamp, different value; kept

    std::string to_json() const {
        auto arr = [](const std::vector<std::size_t>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(v[i]);
            }
            return s + "]";
        };
        std::string s = "{";
        s += "\"rows_in\":" + std::to_string(rows_in);
        s += ",\"records_out\":" + std::to_string(records_out);
        s += ",\"duplicates_removed\":" + std::to_string(duplicates_removed);
        s += ",\"nulls_encountered\":" + std::to_string(nulls_encountered);
        s += ",\"rows_rejected\":" + std::to_string(rows_rejected);
        s += ",\"duplicate_lines\":" + arr(duplicate_lines);
        s += ",\"null_lines\":" + arr(null_lines);
        s += ",\"rejected_lines\":" + arr(rejected_lines);
        s += ",\"conflict_lines\":" + arr(conflict_lines);
        s += "}";
        return s;
    }
};

/// Region x year matrix of mean temperatures; absent readings are nullopt.
struct region_wide_table {
    std::vector<std::string> regions;
    std::vector<int> years;  ///< strictly increasing
    std::vector<std::vector<std::optional<double>>> cells;  ///< [region][year index]

    bool operator==(const region_wide_table&) const = default;

    /// The (year, value) series of one region, present cells only.
    std::vector<year_mean> region_series(std::size_t region_index) const {
        std::vector<year_mean> out;
        const auto& row = cells.at(region_index);
        for (std::size_t j = 0; j < years.size(); ++j) {
            if (row[j]) out.push_back({years[j], *row[j]});
        }
        return out;
    }
};

struct region_parse_result {
    region_wide_table table;
    cleaning_report report;
};

/// Parse the wide export shape: header "state,<year>,<year>,..." followed by
/// one row per region. Empty/NA/NaN/null cells become missing values.
inline region_parse_result parse_region_wide_csv(std::string_view text) {
    region_parse_result out;
    const std::vector<std::string_view> lines = detail::split_lines(text);

    std::size_t header_line = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!detail::trim(lines[i]).empty()) {
            header_line = i + 1;
            break;
        }
    }
    if (header_line == 0) throw format_error("missing header row", 1);

    const std::vector<std::string> header = detail::split_csv_line(lines[header_line - 1]);
    if (header.size() < 2)
        throw format_error("header needs a region column plus at least one year column",
                           header_line);
    if (detail::trim(header[0]).empty())
        throw format_error("header region column name is empty", header_line, 1);
    for (std::size_t j = 1; j < header.size(); ++j) {
        const auto year = detail::parse_int(header[j]);
        if (!year)
            throw format_error("header year column is not an integer", header_line, j + 1);
        if (!out.table.years.empty() && *year <= out.table.years.back())
            throw format_error("header years must be strictly increasing", header_line, j + 1);
        out.table.years.push_back(*year);
    }

    std::set<std::string> seen;
    for (std::size_t i = header_line; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const std::size_t line_no = i + 1;
        const std::vector<std::string> fields = detail::split_csv_line(lines[i]);
        if (fields.size() != header.size())
            throw format_error("row has " + std::to_string(fields.size()) + " fields, expected " +
                                   std::to_string(header.size()),
                               line_no);
        ++out.report.rows_in;

        std::string region{detail::trim(fields[0])};
        if (region.empty()) throw format_error("empty region name", line_no, 1);
        if (!seen.insert(region).second)
            throw format_error("duplicate region row: " + region, line_no, 1);

        std::vector<std::optional<double>> row;
        row.reserve(out.table.years.size());
        for (std::size_t j = 1; j < fields.size(); ++j) {
            if (detail::is_null_token(fields[j])) {
                row.push_back(std::nullopt);
                ++out.report.nulls_encountered;
                out.report.null_lines.push_back(line_no);
                continue;
            }
            const auto v = detail::parse_double(fields[j]);
            if (!v) throw format_error("cell is not numeric", line_no, j + 1);
            row.push_back(*v);
        }
        out.table.regions.push_back(std::move(region));
        out.table.cells.push_back(std::move(row));
    }
    out.report.records_out = out.table.regions.size();
    return out;
}

/// Column names for station files; header matching is case-insensitive.
/// When `timestamp` is empty the parser looks for a timestamp/datetime/date
/// column, then falls back to year/month/day (+ optional hour/minute).
struct station_columns {
    std::string timestamp;
    std::string year = "year";
    std::string month = "month";
    std::string day = "day";
    std::string hour = "hour";
    std::string minute = "minute";
    std::string temperature = "temperature";
    std::string station = "station_id";
};

struct station_record_set {
    std::string station_id;
    std::vector<observation> records;  ///< timestamp-sorted, exact duplicates removed

    bool operator==(const station_record_set&) const = default;
};

struct station_parse_result {
    station_record_set station;
    cleaning_report report;
};

namespace detail {

struct numbered_obs {
    observation obs;
    std::size_t line;
};

// Stable sort by timestamp, then remove exact (timestamp, value) duplicates.
// Distinct values at one timestamp are all kept and flagged as conflicts.
inline std::vector<observation> normalize_numbered(std::vector<numbered_obs> rows,
                                                   cleaning_report& report) {
    std::stable_sort(rows.begin(), rows.end(), [](const numbered_obs& a, const numbered_obs& b) {
        return a.obs.at < b.obs.at;
    });
    std::vector<observation> out;
    out.reserve(rows.size());
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        while (j < rows.size() && rows[j].obs.at == rows[i].obs.at) ++j;
        // dedupe inside the equal-timestamp run, preserving first occurrences
        const std::size_t kept_begin = out.size();
        std::vector<std::size_t> kept_lines;
        for (std::size_t k = i; k < j; ++k) {
            bool duplicate = false;
            for (std::size_t p = kept_begin; p < out.size(); ++p) {
                if (out[p].value == rows[k].obs.value) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) {
                ++report.duplicates_removed;
                report.duplicate_lines.push_back(rows[k].line);
            } else {
                out.push_back(rows[k].obs);
                kept_lines.push_back(rows[k].line);
            }
        }
        if (out.size() - kept_begin >= 2)
            report.conflict_lines.insert(report.conflict_lines.end(), kept_lines.begin(),
                                         kept_lines.end());
        i = j;
    }
    return out;
}

inline std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                              std::string_view name) {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (iequals(trim(header[j]), name)) return j;
    }
    return std::nullopt;
}

}  // namespace detail

/// Parse a station export: a header row, then one observation per row.
/// Rows are sorted by timestamp; exact duplicates are dropped; null and
/// out-of-bounds temperatures are rejected into the cleaning report.
inline station_parse_result parse_station_csv(std::string_view text,
                                              const station_columns& cols = {},
                                              std::string_view default_station_id = "") {
    station_parse_result out;
    const std::vector<std::string_view> lines = detail::split_lines(text);

    std::size_t header_line = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!detail::trim(lines[i]).empty()) {
            header_line = i + 1;
            break;
        }
    }
    if (header_line == 0) throw format_error("missing header row", 1);

    const std::vector<std::string> header = detail::split_csv_line(lines[header_line - 1]);

    const auto temp_col = detail::find_column(header, cols.temperature);
    if (!temp_col)
        throw format_error("temperature column '" + cols.temperature + "' not found", header_line);

    std::optional<std::size_t> ts_col;
    if (!cols.timestamp.empty()) {
        ts_col = detail::find_column(header, cols.timestamp);
        if (!ts_col)
            throw format_error("timestamp column '" + cols.timestamp + "' not found", header_line);
    } else {
        for (std::string_view candidate : {"timestamp", "datetime", "date_time", "date"}) {
            ts_col = detail::find_column(header, candidate);
            if (ts_col) break;
        }
    }

    std::optional<std::size_t> year_col, month_col, day_col, hour_col, minute_col;
    if (!ts_col) {
        year_col = detail::find_column(header, cols.year);
        month_col = detail::find_column(header, cols.month);
        day_col = detail::find_column(header, cols.day);
        hour_col = detail::find_column(header, cols.hour);
        minute_col = detail::find_column(header, cols.minute);
        if (!year_col || !month_col || !day_col)
            throw format_error(
                "no timestamp column and no year/month/day columns in header", header_line);
    }
    const auto station_col = detail::find_column(header, cols.station);

    std::vector<detail::numbered_obs> rows;
    for (std::size_t i = header_line; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const std::size_t line_no = i + 1;
        const std::vector<std::string> fields = detail::split_csv_line(lines[i]);
        if (fields.size() != header.size())
            throw format_error("row has " + std::to_string(fields.size()) + " fields, expected " +
                                   std::to_string(header.size()),
                               line_no);
        ++out.report.rows_in;

        civil_time at;
        if (ts_col) {
            const auto parsed = parse_timestamp(detail::trim(fields[*ts_col]));
            if (!parsed)
                throw format_error("unparseable timestamp '" +
                                       std::string(detail::trim(fields[*ts_col])) + "'",
                                   line_no, *ts_col + 1);
            at = *parsed;
        } else {
            const auto y = detail::parse_int(fields[*year_col]);
            const auto mo = detail::parse_int(fields[*month_col]);
            const auto d = detail::parse_int(fields[*day_col]);
            const auto h = hour_col ? detail::parse_int(fields[*hour_col]) : std::optional<int>(0);
            const auto mi =
                minute_col ? detail::parse_int(fields[*minute_col]) : std::optional<int>(0);
            if (!y || !mo || !d || !h || !mi)
                throw format_error("unparseable date components", line_no);
            at = civil_time{*y, *mo, *d, *h, *mi};
            if (!is_valid(at)) throw format_error("invalid calendar date", line_no);
        }

        if (detail::is_null_token(fields[*temp_col])) {
            ++out.report.nulls_encountered;
            out.report.null_lines.push_back(line_no);
            ++out.report.rows_rejected;
            out.report.rejected_lines.push_back(line_no);
            continue;
        }
        const auto value = detail::parse_double(fields[*temp_col]);
        if (!value)
            throw format_error("temperature cell is not numeric", line_no, *temp_col + 1);
        if (!value_in_bounds(*value)) {
            ++out.report.rows_rejected;
            out.report.rejected_lines.push_back(line_no);
            continue;
        }

        if (station_col && out.station.station_id.empty()) {
            const std::string_view id = detail::trim(fields[*station_col]);
            if (!id.empty()) out.station.station_id = id;
        }
        rows.push_back({observation{at, *value}, line_no});
    }

    if (out.station.station_id.empty()) out.station.station_id = default_station_id;
    out.station.records = detail::normalize_numbered(std::move(rows), out.report);
    out.report.records_out = out.station.records.size();
    return out;
}

/// Sort + dedupe already-parsed observations; used when merging files.
inline void normalize_observations(std::vector<observation>& records, cleaning_report* report) {
    std::vector<detail::numbered_obs> rows;
    rows.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) rows.push_back({records[i], 0});
    cleaning_report scratch;
    cleaning_report& rep = report ? *report : scratch;
    const std::size_t before = records.size();
    records = detail::normalize_numbered(std::move(rows), rep);
    rep.rows_in += before;
    rep.records_out += records.size();
}

/// Exact (shortest round-trip) serialization of a region table back to CSV.
inline std::string region_table_to_csv(const region_wide_table& table) {
    auto num = [](double v) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, ptr);
    };
    std::string s = "state";
    for (int y : table.years) s += "," + std::to_string(y);
    s += "\n";
    for (std::size_t r = 0; r < table.regions.size(); ++r) {
        s += table.regions[r];
        for (const auto& cell : table.cells[r]) s += "," + (cell ? num(*cell) : std::string());
        s += "\n";
    }
    return s;
}

/// Exact serialization of station records ("timestamp,temperature").
inline std::string station_to_csv(const station_record_set& station) {
    std::string s = "timestamp,temperature\n";
    for (const observation& o : station.records) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), o.value);
        s += format_timestamp(o.at);
        s += ",";
        s.append(buf, ptr);
        s += "\n";
    }
    return s;
}

}  // namespace trendkit
