#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace hotspot {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

namespace detail {

inline std::optional<int> parse_fixed(std::string_view s, std::size_t pos, std::size_t len) {
    if (pos + len > s.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

}  // namespace detail

/// Parses an RFC 3339 date-time ("2024-05-01T08:15:00Z", optional fraction,
/// 'Z' or +hh:mm / -hh:mm offset) into UTC milliseconds.
inline std::optional<Timestamp> parse_rfc3339(std::string_view s) {
    using namespace std::chrono;
    if (s.size() < 20) return std::nullopt;
    const auto year = detail::parse_fixed(s, 0, 4);
    const auto month = detail::parse_fixed(s, 5, 2);
    const auto day = detail::parse_fixed(s, 8, 2);
    const auto hour = detail::parse_fixed(s, 11, 2);
    const auto minute = detail::parse_fixed(s, 14, 2);
    const auto second = detail::parse_fixed(s, 17, 2);
    if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') || s[13] != ':' ||
        s[16] != ':') {
        return std::nullopt;
    }
    const year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                             std::chrono::day{static_cast<unsigned>(*day)}};
    if (!ymd.ok() || *hour > 23 || *minute > 59 || *second > 60) return std::nullopt;

    std::size_t pos = 19;
    long millis = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        long scale = 100;
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            millis += (s[pos] - '0') * scale;
            scale /= 10;
            ++pos;
        }
        if (pos == start) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;
    minutes offset{0};
    if (s[pos] == 'Z' || s[pos] == 'z') {
        ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
        const auto oh = detail::parse_fixed(s, pos + 1, 2);
        const auto om = detail::parse_fixed(s, pos + 4, 2);
        if (!oh || !om || pos + 3 >= s.size() || s[pos + 3] != ':') return std::nullopt;
        offset = hours{*oh} + minutes{*om};
        if (s[pos] == '-') offset = -offset;
        pos += 6;
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;

    const auto local = sys_days{ymd} + hours{*hour} + minutes{*minute} + seconds{*second} + milliseconds{millis};
    return time_point_cast<milliseconds>(local - offset);
}

/// Formats as "YYYY-MM-DDTHH:MM:SS[.mmm]Z"; the fraction appears only when nonzero.
inline std::string format_rfc3339(Timestamp t) {
    using namespace std::chrono;
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const auto since_midnight = t - day_point;
    const auto h = duration_cast<hours>(since_midnight);
    const auto m = duration_cast<minutes>(since_midnight - h);
    const auto s = duration_cast<seconds>(since_midnight - h - m);
    const auto ms = (since_midnight - h - m - s).count();
    char buf[40];
    if (ms == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(h.count()), static_cast<int>(m.count()), static_cast<int>(s.count()));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(h.count()), static_cast<int>(m.count()), static_cast<int>(s.count()),
                      static_cast<int>(ms));
    }
    return buf;
}

}  // namespace hotspot
