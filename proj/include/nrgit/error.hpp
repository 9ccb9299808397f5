#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nrgit {

enum class ErrorCode {
  EmptyInput,
  DimensionMismatch,
  TooLarge,
  EmptyRegion,
  RankMismatch,
  LengthMismatch,
  BadMinimalWeight,
  ZeroBeta,
  EmptyCone,
  NoAdaptedTwist,
  RankUnsupported,
  IneffectiveTwist,
  NotAdjacent,
  TooManyWeights,
  NotInY,
  NotInZ,
  InvalidArgument,
  ParseError,
  Validation,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadMinimalWeight: return "BadMinimalWeight";
    case ErrorCode::ZeroBeta: return "ZeroBeta";
    case ErrorCode::EmptyCone: return "EmptyCone";
    case ErrorCode::NoAdaptedTwist: return "NoAdaptedTwist";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::IneffectiveTwist: return "IneffectiveTwist";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::TooManyWeights: return "TooManyWeights";
    case ErrorCode::NotInY: return "NotInY";
    case ErrorCode::NotInZ: return "NotInZ";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Validation: return "Validation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nrgit
