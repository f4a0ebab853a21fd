#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "hotspot/error.hpp"

namespace hotspot {

/// The closed checklist of factors a respondent can tick on each questionnaire.
enum class EventCategory : std::size_t {
    Delay,
    MissedConnection,
    HadToHurry,
    DisruptivePeople,
    Overcrowded,
    DrivingBehavior,
    InfrastructureIssues,
    MissingInformation,
    PositiveInteraction,
    TimeWellSpent,
    ArrivedOnSchedule,
    FeelingUnwell,
    Comfort,
    NiceEnvironment,
    Other,
};

inline constexpr std::size_t kEventCount = 15;

inline constexpr std::array<std::string_view, kEventCount> kEventTokens = {
    "delay",
    "missed_connection",
    "had_to_hurry",
    "disruptive_people",
    "overcrowded",
    "driving_behavior",
    "infrastructure_issues",
    "missing_information",
    "positive_interaction",
    "time_well_spent",
    "arrived_on_schedule",
    "feeling_unwell",
    "comfort",
    "nice_environment",
    "other",
};

constexpr std::string_view to_token(EventCategory e) noexcept {
    return kEventTokens[static_cast<std::size_t>(e)];
}

constexpr EventCategory event_at(std::size_t i) noexcept { return static_cast<EventCategory>(i); }

inline std::optional<EventCategory> try_parse_event(std::string_view token) noexcept {
    for (std::size_t i = 0; i < kEventCount; ++i) {
        if (kEventTokens[i] == token) return event_at(i);
    }
    return std::nullopt;
}

inline EventCategory parse_event(std::string_view token) {
    if (auto e = try_parse_event(token)) return *e;
    throw Error(ErrorCode::InvalidInput, "unknown event category '" + std::string(token) + "'");
}

/// Set of ticked events; iteration order is the enumeration order.
class EventSet {
public:
    EventSet() = default;

    void insert(EventCategory e) noexcept { bits_.set(static_cast<std::size_t>(e)); }
    [[nodiscard]] bool contains(EventCategory e) const noexcept { return bits_.test(static_cast<std::size_t>(e)); }
    [[nodiscard]] std::size_t size() const noexcept { return bits_.count(); }
    [[nodiscard]] bool empty() const noexcept { return bits_.none(); }

    /// Pipe-separated tokens in enumeration order.
    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < kEventCount; ++i) {
            if (!bits_.test(i)) continue;
            if (!out.empty()) out += '|';
            out += kEventTokens[i];
        }
        return out;
    }

    friend bool operator==(const EventSet&, const EventSet&) = default;

private:
    std::bitset<kEventCount> bits_;
};

}  // namespace hotspot
