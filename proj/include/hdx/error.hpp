#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdx {

enum class ErrorCode {
  EmptyInput,
  NonUniformCardinality,
  DuplicateTopFace,
  InvalidWeights,
  UnknownFace,
  BadDimension,
  DimensionMismatch,
  GroupMismatch,
  NonAbelianGroup,
  TopDimension,
  NonAbelianOrientation,
  InconsistentOrientation,
  UndefinedCoboundary,
  Mismatch,
  DimensionTooLow,
  DimensionTooHigh,
  DisconnectedGraph,
  UnknownVertex,
  BadIndex,
  UnknownVariant,
  NotNonLocal,
  NotWeaklyNonLocal,
  ParameterViolation,
  TooLargeToEnumerate,
  AlreadyLocallyMinimal,
  WrongDimension,
  PremiseFailed,
  ParseError,
  BadParams,
};

constexpr std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonUniformCardinality: return "NonUniformCardinality";
    case ErrorCode::DuplicateTopFace: return "DuplicateTopFace";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::UnknownFace: return "UnknownFace";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NonAbelianGroup: return "NonAbelianGroup";
    case ErrorCode::TopDimension: return "TopDimension";
    case ErrorCode::NonAbelianOrientation: return "NonAbelianOrientation";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::UndefinedCoboundary: return "UndefinedCoboundary";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::DimensionTooLow: return "DimensionTooLow";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::UnknownVariant: return "UnknownVariant";
    case ErrorCode::NotNonLocal: return "NotNonLocal";
    case ErrorCode::NotWeaklyNonLocal: return "NotWeaklyNonLocal";
    case ErrorCode::ParameterViolation: return "ParameterViolation";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::AlreadyLocallyMinimal: return "AlreadyLocallyMinimal";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::PremiseFailed: return "PremiseFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hdx
