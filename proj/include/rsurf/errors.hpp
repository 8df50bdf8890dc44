#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsurf {

enum class ErrorCode {
    // numerical
    NonConvergence,
    SingularMatrix,
    RankDeficient,
    DegeneratePair,
    SameSignPair,
    NoPositiveBranch,
    ZeroCoefficient,
    NotTwoVariable,
    DomainError,
    // input
    DimensionMismatch,
    DuplicateTerm,
    IndexOutOfRange,
    InvalidArgument,
    WrongKind,
    NonPositiveBound,
    TooFewRows,
    ParseError,
    SchemaError,
    NegativeEmission,
    IoError,
};

std::string_view to_string(ErrorCode code);

// True for failures that come from the numbers rather than from malformed input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string module, const std::string& message)
        : std::runtime_error(message), code_(code), module_(std::move(module)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorCode code_;
    std::string module_;
};

}  // namespace rsurf
