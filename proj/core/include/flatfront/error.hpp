#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatfront {

enum class ErrorCode {
  kNonHermitian,
  kNotInH3,
  kNotUnimodular,
  kOutsideDomain,
  kConstantFunction,
  kEpsilonTooLarge,
  kBadParams,
  kTooManyPoints,
  kDuplicatePoints,
  kNotAnEnd,
  kPoleOnPath,
  kStepUnderflow,
  kPoleAtPoint,
  kQuadratureFailure,
  kSingularSample,
  kNotWeaklyComplete,
  kUnsupported,
  kParseError,
  kIoError,
};

/// Stable identifier used in machine-readable error output.
std::string_view error_name(ErrorCode code) noexcept;

/// True for errors caused by bad user input rather than a numerical failure.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatfront
