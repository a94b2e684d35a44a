#pragma once

#include <stdexcept>
#include <string>

namespace mink {

enum class ErrorCode {
    InvalidSpec,
    SingularTransform,
    ZeroVector,
    QuadratureFailure,
    DegenerateBasis,
    NotOnSphere,
    NotOnHalfSphere,
    NotDifferentiableAtB,
    CoincidentPoints,
    NotACorner,
    SingularSystem,
    BadChordAlignment,
    InvalidConfig,
    OnPerpSet,
    DegenerateComponent,
    SingularPair,
    NoBracket,
    NotIsometric,
    WrongCornerCount,
    HalfLengthMismatch,
    JumpMismatch,
    VerificationFailure,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mink
