#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace situp {

enum class ErrorCode {
    DimensionMismatch,
    AsymmetricSpectrum,
    PatchTooSmall,
    GrayscaleInput,
    DegenerateBox,
    MissingGroundtruth,
    FrameCountMismatch,
    UnreadableFrame,
    FrameDecode,
    SpecOutOfFrame,
    EmptyTrajectory,
    UnknownAttribute,
    InvalidConfig,
    InvalidTable,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace situp
