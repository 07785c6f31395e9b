#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace numeracy {

enum class ErrorCode {
  // bundle
  MissingFile,
  MetaMismatch,
  NonFiniteEntry,
  MalformedMeta,
  InvalidBundle,
  IoFailure,
  // probe sets
  UnknownSet,
  ParseError,
  DuplicateValue,
  MissingTokens,
  // pca
  DegenerateInput,
  DimMismatch,
  DegenerateEndpoints,
  NonPositiveValue,
  // metrics
  TooFew,
  ZeroSpread,
  // synth
  InvalidSpec,
  // rendering
  NotTwoDimensional,
  EmptyLayout,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MetaMismatch: return "MetaMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::MalformedMeta: return "MalformedMeta";
    case ErrorCode::InvalidBundle: return "InvalidBundle";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UnknownSet: return "UnknownSet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateValue: return "DuplicateValue";
    case ErrorCode::MissingTokens: return "MissingTokens";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DegenerateEndpoints: return "DegenerateEndpoints";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::TooFew: return "TooFew";
    case ErrorCode::ZeroSpread: return "ZeroSpread";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::EmptyLayout: return "EmptyLayout";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// I/O failures map to exit status 2 in the CLI, everything else to 1.
constexpr bool is_io_error(ErrorCode code) {
  return code == ErrorCode::MissingFile || code == ErrorCode::IoFailure;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace numeracy
