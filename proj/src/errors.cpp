#include "rsurf/errors.hpp"

namespace rsurf {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DegeneratePair: return "DegeneratePair";
        case ErrorCode::SameSignPair: return "SameSignPair";
        case ErrorCode::NoPositiveBranch: return "NoPositiveBranch";
        case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorCode::NotTwoVariable: return "NotTwoVariable";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DuplicateTerm: return "DuplicateTerm";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::WrongKind: return "WrongKind";
        case ErrorCode::NonPositiveBound: return "NonPositiveBound";
        case ErrorCode::TooFewRows: return "TooFewRows";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::NegativeEmission: return "NegativeEmission";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonConvergence:
        case ErrorCode::SingularMatrix:
        case ErrorCode::RankDeficient:
        case ErrorCode::DegeneratePair:
        case ErrorCode::SameSignPair:
        case ErrorCode::NoPositiveBranch:
        case ErrorCode::ZeroCoefficient:
        case ErrorCode::NotTwoVariable:
        case ErrorCode::DomainError:
            return true;
        default:
            return false;
    }
}

}  // namespace rsurf
