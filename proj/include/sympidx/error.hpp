#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympidx {

enum class ErrorCode {
    NotSymplectic,
    OddDimension,
    DimensionMismatch,
    IllConditioned,
    OutOfDomain,
    EndpointMismatch,
    SchemaError,
    OddRotation,
    RefinementExhausted,
    NotALoop,
    NonIntegerResidual,
    OnCycle,
    HalfCircleMismatch,
    NotFromIdentity,
    Degenerate,
    RouteMismatch,
    L0Degenerate,
    ComponentPathFailure,
    NoAdmissiblePerturbation,
    ConcavityUnavailable,
    IrregularCrossing,
    BranchTrackingFailure,
    NonTransversalAfterPerturbation,
    InvalidFrame,
    IoError,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by malformed or invalid user input (CLI exit 3).
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace sympidx
