#include "k3/error.hpp"

namespace k3 {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::FrameDegenerate: return "FrameDegenerate";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::BadLabels: return "BadLabels";
    case ErrorCode::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::PreconditionError: return "PreconditionError";
    case ErrorCode::CoordsOutOfDomain: return "CoordsOutOfDomain";
    case ErrorCode::InconsistentRatio: return "InconsistentRatio";
    case ErrorCode::NoAdmissibleSigns: return "NoAdmissibleSigns";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::RadiusExceeded: return "RadiusExceeded";
    case ErrorCode::NotInSiegel: return "NotInSiegel";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::PreIterationExhausted: return "PreIterationExhausted";
  }
  return "Unknown";
}

}  // namespace k3
