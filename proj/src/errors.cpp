#include "centrality/errors.hpp"

#include <cstdio>

namespace centrality {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::InvalidInputs: return "InvalidInputs";
    case ErrorCode::NotPositiveElement: return "NotPositiveElement";
    case ErrorCode::InconsistentMath: return "InconsistentMath";
    case ErrorCode::NotAViolation: return "NotAViolation";
    case ErrorCode::DerivationFailed: return "DerivationFailed";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace centrality
