#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cycleprobe {

// Every failure the library reports carries one of these classes. The CLI
// maps them to exit codes, so the numeric values are part of the interface.
enum class ErrorCode : int {
    InvalidArgument = 2,
    EmptyIntersection = 3,
    NonPositiveInput = 4,
    MisalignedSeries = 5,
    LagTooLarge = 6,
    SeriesTooShort = 7,
    NonPositiveLambda = 8,
    InvalidDesign = 9,
    DegenerateDummy = 10,
    PerfectSeparation = 11,
    SingularInformation = 12,
    NotConverged = 13,
    DimensionMismatch = 14,
    SingularSubcovariance = 15,
    LengthMismatch = 16,
    EmptyInput = 17,
    AllActualsZero = 18,
    NoSignificantModel = 19,
    InsufficientSample = 20,
    ParseError = 21,
    GapInSeries = 22,
    DuplicateQuarter = 23,
    NonPositiveValue = 24,
    ConfigError = 25,
    IoError = 26,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace cycleprobe
