#pragma once

#include <stdexcept>
#include <string>

namespace tightmaps {

enum class ErrorCode {
  ZeroConstantTerm,
  NotASquare,
  HalfIntegerDifferentiation,
  BeyondTruncation,
  InvalidRange,
  InsufficientOrders,
  ParityMismatch,
  OutOfRange,
  InsufficientSamples,
  NotQuasiPolynomial,
  NonConvergence,
  InvalidIndex,
  IndexBeyondLmax,
  HalfPowerResidue,
  InsufficientOrder,
  AssumptionViolated,
  UnsupportedCase,
  NonBipartiteWeights,
  LogOfNonUnit,
  BeyondLmax,
  MissingDependency,
  UnsupportedGenus,
  SingularDifferential,
  MomentMismatch,
  ScaleExceeded,
  InactiveWeight,
  Parse,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace tightmaps
