#include "dpinv/error.hpp"

namespace dpinv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyOrSingleton: return "EmptyOrSingleton";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::ZeroSum: return "ZeroSum";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorCode::NonPositiveConcentration: return "NonPositiveConcentration";
    case ErrorCode::ZeroMeanComponent: return "ZeroMeanComponent";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::ZeroMassCell: return "ZeroMassCell";
    case ErrorCode::UnsortedEdges: return "UnsortedEdges";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::InconsistentCount: return "InconsistentCount";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyDraw: return "EmptyDraw";
    case ErrorCode::InsufficientDraws: return "InsufficientDraws";
    case ErrorCode::EmptyArm: return "EmptyArm";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace dpinv
