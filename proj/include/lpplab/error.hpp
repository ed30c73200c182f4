#pragma once

#include <stdexcept>
#include <string>

namespace lpplab {

enum class ErrorCode {
  InvalidParams,
  ShapeMismatch,
  NonPositiveWeight,
  PreconditionViolated,
  OutOfWindow,
  InfeasibleEndpoint,
  UnsupportedEndpointShape,
  BudgetExceeded,
  NoFeasiblePair,
  WrongSemiring,
  NoAdmissiblePath,
  NegativeWeight,
  WrongMode,
  InvalidChain,
  NotMoon,
  HypothesesViolated,
  InvalidRearrangement,
  InvalidScenario,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::InfeasibleEndpoint: return "InfeasibleEndpoint";
    case ErrorCode::UnsupportedEndpointShape: return "UnsupportedEndpointShape";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoFeasiblePair: return "NoFeasiblePair";
    case ErrorCode::WrongSemiring: return "WrongSemiring";
    case ErrorCode::NoAdmissiblePath: return "NoAdmissiblePath";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::NotMoon: return "NotMoon";
    case ErrorCode::HypothesesViolated: return "HypothesesViolated";
    case ErrorCode::InvalidRearrangement: return "InvalidRearrangement";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lpplab
