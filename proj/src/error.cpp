#include "cycleprobe/error.hpp"

namespace cycleprobe {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::MisalignedSeries: return "MisalignedSeries";
    case ErrorCode::LagTooLarge: return "LagTooLarge";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::InvalidDesign: return "InvalidDesign";
    case ErrorCode::DegenerateDummy: return "DegenerateDummy";
    case ErrorCode::PerfectSeparation: return "PerfectSeparation";
    case ErrorCode::SingularInformation: return "SingularInformation";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSubcovariance: return "SingularSubcovariance";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::AllActualsZero: return "AllActualsZero";
    case ErrorCode::NoSignificantModel: return "NoSignificantModel";
    case ErrorCode::InsufficientSample: return "InsufficientSample";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GapInSeries: return "GapInSeries";
    case ErrorCode::DuplicateQuarter: return "DuplicateQuarter";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace cycleprobe
