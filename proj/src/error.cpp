#include "atugv/error.hpp"

namespace atugv {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Decomposition: return "decomposition-error";
        case ErrorCode::LayeringViolation: return "layering-violation";
        case ErrorCode::DegreeViolation: return "degree-violation";
        case ErrorCode::ReferenceOverlap: return "reference-overlap";
        case ErrorCode::Domain: return "domain-error";
        case ErrorCode::UnsafePlan: return "unsafe-plan";
        case ErrorCode::UnreachableSeparation: return "unreachable-separation";
        case ErrorCode::InconsistentAngles: return "inconsistent-angles";
        case ErrorCode::Simulation: return "simulation-error";
        case ErrorCode::Parse: return "parse-error";
        case ErrorCode::Validation: return "validation-error";
        case ErrorCode::Io: return "io-error";
    }
    return "unknown-error";
}

}  // namespace atugv
