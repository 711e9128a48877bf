#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3 {

enum class ErrorCode {
  DomainError,
  NoConvergence,
  FrameDegenerate,
  SingularBlock,
  BadLabels,
  DegenerateQuadratic,
  DegenerateInput,
  PreconditionError,
  CoordsOutOfDomain,
  InconsistentRatio,
  NoAdmissibleSigns,
  NotInDomain,
  NotUnitary,
  SingularDenominator,
  RadiusExceeded,
  NotInSiegel,
  OrderViolation,
  PreIterationExhausted,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this one exception type; the
// code tells callers (and the CLI exit-status mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace k3
