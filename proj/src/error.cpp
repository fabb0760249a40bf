#include "sympidx/error.hpp"

namespace sympidx {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSymplectic: return "NotSymplectic";
        case ErrorCode::OddDimension: return "OddDimension";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IllConditioned: return "IllConditioned";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::OddRotation: return "OddRotation";
        case ErrorCode::RefinementExhausted: return "RefinementExhausted";
        case ErrorCode::NotALoop: return "NotALoop";
        case ErrorCode::NonIntegerResidual: return "NonIntegerResidual";
        case ErrorCode::OnCycle: return "OnCycle";
        case ErrorCode::HalfCircleMismatch: return "HalfCircleMismatch";
        case ErrorCode::NotFromIdentity: return "NotFromIdentity";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::RouteMismatch: return "RouteMismatch";
        case ErrorCode::L0Degenerate: return "L0Degenerate";
        case ErrorCode::ComponentPathFailure: return "ComponentPathFailure";
        case ErrorCode::NoAdmissiblePerturbation: return "NoAdmissiblePerturbation";
        case ErrorCode::ConcavityUnavailable: return "ConcavityUnavailable";
        case ErrorCode::IrregularCrossing: return "IrregularCrossing";
        case ErrorCode::BranchTrackingFailure: return "BranchTrackingFailure";
        case ErrorCode::NonTransversalAfterPerturbation: return "NonTransversalAfterPerturbation";
        case ErrorCode::InvalidFrame: return "InvalidFrame";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSymplectic:
        case ErrorCode::OddDimension:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::OutOfDomain:
        case ErrorCode::EndpointMismatch:
        case ErrorCode::SchemaError:
        case ErrorCode::InvalidFrame:
        case ErrorCode::IoError:
            return true;
        default:
            return false;
    }
}

}  // namespace sympidx
