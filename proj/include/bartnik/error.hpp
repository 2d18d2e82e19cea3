#pragma once

#include <stdexcept>
#include <string>

namespace bartnik {

enum class ErrorKind {
  Infeasible,
  HypothesisFailed,
  NonPositiveCurvature,
  ZeroProfileAtBoundary,
  OutOfDomain,
  DomainExit,
  StepFailure,
  Divergent,
  DECViolation,
  TrappedLeaf,
  TrappedSurfaceFound,
  MassOutOfRange,
  ShapeInfeasible,
  EpsilonExhausted,
  DeltaExhausted,
  PreconditionViolated,
  DegenerateC,
  InvalidInput,
  SchemaError,
};

/// Single exception type carrying a kind tag and, where meaningful, the
/// location (radius, arclength or parameter value) the failure was seen at.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, double where = 0.0)
      : std::runtime_error(std::move(message)), kind(kind), where(where) {}

  ErrorKind kind;
  double where;
};

const char* error_kind_name(ErrorKind kind);

/// Exit-code family used by the CLI: 1 infeasible/audit, 2 usage/schema,
/// 3 numerical failure.
int error_kind_exit_code(ErrorKind kind);

}  // namespace bartnik
