#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permgen {

enum class ErrorCode {
  EmptyCorpus,
  DimensionMismatch,
  DuplicateCreation,
  NonFiniteCoordinate,
  InvalidArgument,
  ZeroVolumeBounding,
  EmptyPolytope,
  InsufficientPoints,
  DegenerateSystem,
  GridExplosion,
  UnsupportedComposition,
  UnsupportedDimension,
  NotConvexValued,
  ProtectedSetNotInCorpus,
  ZeroGenerableVolume,
  MisalignedCheckpoints,
  DimensionNotOne,
  ParseError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateCreation: return "DuplicateCreation";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVolumeBounding: return "ZeroVolumeBounding";
    case ErrorCode::EmptyPolytope: return "EmptyPolytope";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::GridExplosion: return "GridExplosion";
    case ErrorCode::UnsupportedComposition: return "UnsupportedComposition";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotConvexValued: return "NotConvexValued";
    case ErrorCode::ProtectedSetNotInCorpus: return "ProtectedSetNotInCorpus";
    case ErrorCode::ZeroGenerableVolume: return "ZeroGenerableVolume";
    case ErrorCode::MisalignedCheckpoints: return "MisalignedCheckpoints";
    case ErrorCode::DimensionNotOne: return "DimensionNotOne";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace permgen
