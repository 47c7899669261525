#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvcomm {

enum class ErrorCode {
  InvalidGraph,
  ParseError,
  CapExceeded,
  DimensionMismatch,
  ParamOutOfRange,
  InvalidDistribution,
  InvalidGameSpec,
  NotACover,
  NoConvergence,
  InvalidMessage,
  InvalidSupport,
  NotFound,
  InvalidPlan,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidGameSpec: return "InvalidGameSpec";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidMessage: return "InvalidMessage";
    case ErrorCode::InvalidSupport: return "InvalidSupport";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-readable code; the
// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mvcomm
