#include "uniformize/error.hpp"

namespace uniformize {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::FixedDart: return "FixedDart";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::PhiOutOfRange: return "PhiOutOfRange";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::NotSphere: return "NotSphere";
    case ErrorCode::InvalidFace: return "InvalidFace";
    case ErrorCode::NonpositiveThetaV: return "NonpositiveThetaV";
    case ErrorCode::InvolutionNotFree: return "InvolutionNotFree";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::BadSigns: return "BadSigns";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::SphereNeedsFace: return "SphereNeedsFace";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::LayoutUnsupported: return "LayoutUnsupported";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

}  // namespace uniformize
