#pragma once

#include <stdexcept>
#include <string>

namespace stratlab {

enum class ErrorKind {
    PointwiseUndefined,
    NonIntegrable,
    OriginSingularity,
    LightConeSingularity,
    QuadratureFailure,
    OrderTooLarge,
    DimensionMismatch,
    NotPSD,
    Divergent,
    BudgetExceeded,
    InvalidPairing,
    NotNormalized,
    Stalled,
    HypothesisViolated,
    ExpOverflow,
    InvalidArgument,
    ConfigError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace stratlab
