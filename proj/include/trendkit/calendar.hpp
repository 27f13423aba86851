#pragma once

#include <array>
#include <charconv>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "trendkit/errors.hpp"

namespace trendkit {

/// Proleptic Gregorian calendar instant at minute resolution. Ordering is
/// lexicographic over (year, month, day, hour, minute).
struct civil_time {
    int year = 1970;
    int month = 1;  ///< 1..12
    int day = 1;    ///< 1..days_in_month
    int hour = 0;   ///< 0..23
    int minute = 0; ///< 0..59

    friend auto operator<=>(const civil_time&, const civil_time&) = default;
};

inline bool is_leap_year(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

inline bool is_valid(const civil_time& t) {
    return t.month >= 1 && t.month <= 12 && t.day >= 1 && t.day <= days_in_month(t.year, t.month) &&
           t.hour >= 0 && t.hour <= 23 && t.minute >= 0 && t.minute <= 59;
}

/// Days since 1970-01-01 (negative before). Standard civil-calendar
/// conversion over 400-year eras.
inline long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const long long yoe = y - era * 400;
    const long long doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

/// Fractional day coordinate: days since epoch plus the in-day fraction.
inline double time_coordinate(const civil_time& t) {
    return static_cast<double>(days_from_civil(t.year, t.month, t.day)) +
           (static_cast<double>(t.hour) + static_cast<double>(t.minute) / 60.0) / 24.0;
}

namespace detail {

inline std::optional<int> parse_int_field(std::string_view s) {
    int v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

}  // namespace detail

/// Parse "YYYY-MM-DD", optionally followed by " HH:MM", "THH:MM" or
/// "THH:MM:SS" (seconds accepted and discarded). Returns nullopt on any
/// malformed or out-of-range component.
inline std::optional<civil_time> parse_timestamp(std::string_view text) {
    civil_time t;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    const auto year = detail::parse_int_field(text.substr(0, 4));
    const auto month = detail::parse_int_field(text.substr(5, 2));
    const auto day = detail::parse_int_field(text.substr(8, 2));
    if (!year || !month || !day) return std::nullopt;
    t.year = *year;
    t.month = *month;
    t.day = *day;

    if (text.size() > 10) {
        if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
        std::string_view rest = text.substr(11);
        if (rest.size() != 5 && rest.size() != 8) return std::nullopt;
        if (rest[2] != ':') return std::nullopt;
        const auto hour = detail::parse_int_field(rest.substr(0, 2));
        const auto minute = detail::parse_int_field(rest.substr(3, 2));
        if (!hour || !minute) return std::nullopt;
        if (rest.size() == 8) {
            if (rest[5] != ':' || !detail::parse_int_field(rest.substr(6, 2))) return std::nullopt;
        }
        t.hour = *hour;
        t.minute = *minute;
    }
    if (!is_valid(t)) return std::nullopt;
    return t;
}

/// "YYYY-MM-DDTHH:MM", zero-padded.
inline std::string format_timestamp(const civil_time& t) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", t.year, t.month, t.day, t.hour,
                  t.minute);
    return buf;
}

}  // namespace trendkit
