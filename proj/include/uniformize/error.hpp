#pragma once

#include <stdexcept>
#include <string>

namespace uniformize {

enum class ErrorCode {
  // map construction
  NotInvolution,
  FixedDart,
  Disconnected,
  LoopEdge,
  BadInput,
  // special functions
  PhiOutOfRange,
  // angle systems
  DomainViolation,
  BoundaryPoint,
  NotSphere,
  InvalidFace,
  NonpositiveThetaV,
  InvolutionNotFree,
  NotAutomorphism,
  // flows
  BadSigns,
  Infeasible,
  // solver
  MaxIterExceeded,
  NotInterior,
  SphereNeedsFace,
  // geometry
  DegenerateTriangle,
  NotCritical,
  LayoutUnsupported,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace uniformize
