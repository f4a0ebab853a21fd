#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hotspot {

enum class ErrorCode {
    EmptyDataset,
    SchemaError,
    IdOutOfRange,
    InsufficientPoints,
    InvalidBand,
    DegenerateValues,
    NoNeighbors,
    DegenerateMarginals,
    InvalidPValue,
    InputMismatch,
    InvalidConfig,
    InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::IdOutOfRange: return "IdOutOfRange";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::InvalidBand: return "InvalidBand";
        case ErrorCode::DegenerateValues: return "DegenerateValues";
        case ErrorCode::NoNeighbors: return "NoNeighbors";
        case ErrorCode::DegenerateMarginals: return "DegenerateMarginals";
        case ErrorCode::InvalidPValue: return "InvalidPValue";
        case ErrorCode::InputMismatch: return "InputMismatch";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable guard code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Non-fatal conditions attached to results rather than thrown.
enum class Warning {
    MonotoneCurve,
    NoSignificantPeak,
    AllNeighbors,
    FewPoints,
};

constexpr std::string_view to_string(Warning w) noexcept {
    switch (w) {
        case Warning::MonotoneCurve: return "MonotoneCurve";
        case Warning::NoSignificantPeak: return "NoSignificantPeak";
        case Warning::AllNeighbors: return "AllNeighbors";
        case Warning::FewPoints: return "FewPoints";
    }
    return "Unknown";
}

}  // namespace hotspot
