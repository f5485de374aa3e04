#include "situp/error.hpp"

namespace situp {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AsymmetricSpectrum: return "AsymmetricSpectrum";
    case ErrorCode::PatchTooSmall: return "PatchTooSmall";
    case ErrorCode::GrayscaleInput: return "GrayscaleInput";
    case ErrorCode::DegenerateBox: return "DegenerateBox";
    case ErrorCode::MissingGroundtruth: return "MissingGroundtruth";
    case ErrorCode::FrameCountMismatch: return "FrameCountMismatch";
    case ErrorCode::UnreadableFrame: return "UnreadableFrame";
    case ErrorCode::FrameDecode: return "FrameDecode";
    case ErrorCode::SpecOutOfFrame: return "SpecOutOfFrame";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

}  // namespace situp
