#include "weylns/error.hpp"

namespace weylns {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::SpaceMismatch: return "SpaceMismatch";
  case ErrorCode::InvalidArc: return "InvalidArc";
  case ErrorCode::NotARoot: return "NotARoot";
  case ErrorCode::InvalidDegree: return "InvalidDegree";
  case ErrorCode::InvalidParameters: return "InvalidParameters";
  case ErrorCode::InvalidProfile: return "InvalidProfile";
  case ErrorCode::UntrackedTranslate: return "UntrackedTranslate";
  case ErrorCode::ShapeError: return "ShapeError";
  case ErrorCode::NotIsometry: return "NotIsometry";
  case ErrorCode::PreconditionViolated: return "PreconditionViolated";
  case ErrorCode::ConfigInvalidDivisibility: return "ConfigInvalidDivisibility";
  case ErrorCode::ConfigSmallFiber: return "ConfigSmallFiber";
  case ErrorCode::TorsionCollision: return "TorsionCollision";
  case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

} // namespace weylns
