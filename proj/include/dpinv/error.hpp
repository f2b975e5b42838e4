#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpinv {

enum class ErrorCode {
  EmptyOrSingleton,
  NegativeEntry,
  ZeroSum,
  NonFinite,
  DimensionMismatch,
  BoundaryPoint,
  NonPositiveDelta,
  NonPositiveConcentration,
  ZeroMeanComponent,
  EmptyData,
  ZeroMassCell,
  UnsortedEdges,
  InvalidBase,
  InconsistentCount,
  InvalidArgument,
  EmptyDraw,
  InsufficientDraws,
  EmptyArm,
  TooFewObservations,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; the code identifies which
// precondition was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpinv
