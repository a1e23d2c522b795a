#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylns {

enum class ErrorCode {
  SpaceMismatch,
  InvalidArc,
  NotARoot,
  InvalidDegree,
  InvalidParameters,
  InvalidProfile,
  UntrackedTranslate,
  ShapeError,
  NotIsometry,
  PreconditionViolated,
  ConfigInvalidDivisibility,
  ConfigSmallFiber,
  TorsionCollision,
  ConfigInvalid,
  ParseError,
  Overflow,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code distinguishes the contract violation.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace weylns
