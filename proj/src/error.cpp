#include "stratlab/error.hpp"

namespace stratlab {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::PointwiseUndefined: return "PointwiseUndefined";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::OriginSingularity: return "OriginSingularity";
    case ErrorKind::LightConeSingularity: return "LightConeSingularity";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidPairing: return "InvalidPairing";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::Stalled: return "Stalled";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ExpOverflow: return "ExpOverflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace stratlab
