#pragma once

#include <stdexcept>
#include <string>

namespace lus {

enum class Errc {
    DimensionMismatch,
    NonFiniteValue,
    FrameTooSmall,
    EmptyClip,
    NoCandidates,
    InsufficientPoints,
    MissingClass,
    LengthMismatch,
    EmptyInput,
    DegenerateClass,
    AllClassesDegenerate,
    InconsistentSpec,
    InvalidArgument,
    ParseError,
    MismatchedInputs,
    PatientOverlap,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace lus
