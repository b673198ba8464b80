#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mscodec {

enum class Errc {
    DuplicateString,
    LengthMismatch,
    OddLength,
    InvalidArgument,
    ParseError,
    DistanceTooSmall,
    SearchSpaceTooLarge,
    NoSolution,
    AmbiguousSolution,
    CountMismatch,
    NegativeIncrement,
    InconsistentPoolSize,
    Unsupported,
    PatternNotPresent,
    NotMassReducing,
    Conflict,
    CapabilityTooSmall,
    TooManyErasures,
    DecodeFailure,
    OddH,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mscodec
