#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankskew {

enum class ErrorKind {
    EmptySample,
    NonFiniteValue,
    TooFewObservations,
    NoUniqueMode,
    DegenerateSample,
    DegenerateIQR,
    DegenerateSpread,
    DegenerateRange,
    DomainError,
    InvalidParameters,
    UnknownDistribution,
    ParseError,
    EmptyInput,
    ConfigError,
    IoError,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::TooFewObservations: return "TooFewObservations";
    case ErrorKind::NoUniqueMode: return "NoUniqueMode";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::DegenerateIQR: return "DegenerateIQR";
    case ErrorKind::DegenerateSpread: return "DegenerateSpread";
    case ErrorKind::DegenerateRange: return "DegenerateRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::UnknownDistribution: return "UnknownDistribution";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Input text could not be read as numbers; positions are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace rankskew
