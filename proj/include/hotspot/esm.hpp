#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hotspot/error.hpp"
#include "hotspot/events.hpp"
#include "hotspot/geo.hpp"
#include "hotspot/text.hpp"
#include "hotspot/timestamp.hpp"

namespace hotspot {

inline constexpr std::size_t kItemCount = 8;
inline constexpr double kItemMin = 1.0;
inline constexpr double kItemMax = 5.0;

/// One geo-tagged experience-sampling questionnaire.
struct EsmReport {
    std::string report_id;
    std::string participant_id;
    std::string trip_id;
    Timestamp timestamp{};
    GeoPoint location;
    std::array<double, kItemCount> items{};
    EventSet events;
    std::optional<std::string> free_text_category;

    friend bool operator==(const EsmReport&, const EsmReport&) = default;
};

/// Travel experience: the plain mean of the eight slider items.
inline double experience_score(const EsmReport& report) noexcept {
    double sum = 0.0;
    for (double v : report.items) sum += v;
    return sum / static_cast<double>(kItemCount);
}

inline std::vector<double> experience_scores(std::span<const EsmReport> reports) {
    std::vector<double> out;
    out.reserve(reports.size());
    for (const auto& r : reports) out.push_back(experience_score(r));
    return out;
}

inline std::size_t count_participants(std::span<const EsmReport> reports) {
    std::unordered_set<std::string_view> ids;
    for (const auto& r : reports) ids.insert(r.participant_id);
    return ids.size();
}

inline constexpr std::array<std::string_view, 16> kCsvColumns = {
    "report_id", "participant_id", "trip_id", "timestamp_utc", "lat",   "lon",   "item1",  "item2",
    "item3",     "item4",          "item5",   "item6",         "item7", "item8", "events", "free_text_category",
};

inline std::string csv_header() {
    std::string out;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        if (i) out += ',';
        out += kCsvColumns[i];
    }
    return out;
}

struct Rejection {
    std::size_t row_number = 0;  // 1-based line number in the source, header = 1
    std::string reason;
};

struct ParseResult {
    std::vector<EsmReport> reports;
    std::vector<Rejection> rejections;
};

namespace detail {

inline std::string_view trim_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

/// Parses one data row against the header column positions; returns the
/// rejection reason on failure.
inline std::optional<std::string> parse_row(const std::vector<std::string>& f,
                                            const std::array<std::size_t, kCsvColumns.size()>& col,
                                            EsmReport& out) {
    auto at = [&](std::size_t c) -> const std::string& { return f[col[c]]; };
    out.report_id = at(0);
    out.participant_id = at(1);
    out.trip_id = at(2);
    if (out.report_id.empty()) return "empty report_id";
    if (out.participant_id.empty()) return "empty participant_id";

    const auto ts = parse_rfc3339(at(3));
    if (!ts) return "invalid RFC 3339 timestamp";
    out.timestamp = *ts;

    const auto lat = text::parse_double(at(4));
    const auto lon = text::parse_double(at(5));
    if (!lat || !lon) return "non-numeric coordinate";
    out.location = {*lat, *lon};
    if (!out.location.valid()) return "coordinate out of WGS84 bounds";

    for (std::size_t k = 0; k < kItemCount; ++k) {
        const std::string& raw = at(6 + k);
        if (raw.empty()) return "missing item" + std::to_string(k + 1);
        const auto v = text::parse_double(raw);
        if (!v || !std::isfinite(*v)) return "non-numeric item" + std::to_string(k + 1);
        if (*v < kItemMin || *v > kItemMax) return "item out of [1,5]";
        out.items[k] = *v;
    }

    out.events = {};
    std::string_view events = at(14);
    while (!events.empty()) {
        const auto bar = events.find('|');
        const auto token = events.substr(0, bar);
        const auto e = try_parse_event(token);
        if (!e) return "unknown event '" + std::string(token) + "'";
        out.events.insert(*e);
        if (bar == std::string_view::npos) break;
        events.remove_prefix(bar + 1);
    }

    if (at(15).empty()) {
        out.free_text_category.reset();
    } else {
        out.free_text_category = at(15);
    }
    return std::nullopt;
}

}  // namespace detail

/// Reads the ESM CSV format, collecting malformed rows instead of throwing.
/// Throws SchemaError for a missing header column and EmptyDataset for a
/// stream without a header line; `reports` may come back empty.
inline ParseResult read_reports(std::istream& in) {
    ParseResult result;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::EmptyDataset, "input has no header line");
    std::string_view header_line = detail::trim_cr(line);
    if (header_line.size() >= 3 && header_line.substr(0, 3) == "\xEF\xBB\xBF") header_line.remove_prefix(3);
    const auto header = text::split_csv(header_line);

    std::array<std::size_t, kCsvColumns.size()> col{};
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
        const auto it = std::find(header.begin(), header.end(), kCsvColumns[c]);
        if (it == header.end()) {
            throw Error(ErrorCode::SchemaError, "missing header column '" + std::string(kCsvColumns[c]) + "'");
        }
        col[c] = static_cast<std::size_t>(it - header.begin());
    }

    std::unordered_set<std::string> seen_ids;
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        const std::string_view row = detail::trim_cr(line);
        if (row.empty()) continue;
        const auto fields = text::split_csv(row);
        if (fields.size() != header.size()) {
            result.rejections.push_back({row_number, "expected " + std::to_string(header.size()) + " fields, got " +
                                                         std::to_string(fields.size())});
            continue;
        }
        EsmReport report;
        if (auto reason = detail::parse_row(fields, col, report)) {
            result.rejections.push_back({row_number, std::move(*reason)});
            continue;
        }
        if (!seen_ids.insert(report.report_id).second) {
            result.rejections.push_back({row_number, "duplicate report_id"});
            continue;
        }
        result.reports.push_back(std::move(report));
    }
    return result;
}

/// As read_reports, but a stream without any valid row is an EmptyDataset error.
inline ParseResult parse_reports(std::istream& in) {
    ParseResult result = read_reports(in);
    if (result.reports.empty()) throw Error(ErrorCode::EmptyDataset, "no valid report rows");
    return result;
}

inline void write_reports(std::ostream& out, std::span<const EsmReport> reports) {
    out << csv_header() << '\n';
    for (const auto& r : reports) {
        out << text::csv_field(r.report_id) << ',' << text::csv_field(r.participant_id) << ','
            << text::csv_field(r.trip_id) << ',' << format_rfc3339(r.timestamp) << ','
            << text::shortest(r.location.lat) << ',' << text::shortest(r.location.lon);
        for (double v : r.items) out << ',' << text::shortest(v);
        out << ',' << r.events.to_string() << ',' << text::csv_field(r.free_text_category.value_or("")) << '\n';
    }
}

inline void write_rejections(std::ostream& out, std::span<const Rejection> rejections) {
    out << "row_number,reason\n";
    for (const auto& r : rejections) out << r.row_number << ',' << text::csv_field(r.reason) << '\n';
}

}  // namespace hotspot
