#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curetail {

enum class ErrorCode {
  EmptySample,
  InvalidSample,
  InvalidK,
  NonPositiveThreshold,
  InvalidFraction,
  InvalidConfig,
  InvalidSpec,
  KTooSmallForStress,
  MissingHeader,
  MalformedRow,
  InvalidStatus,
  Io,
  // numerical failures
  TransformDomain,
  InfeasibleP,
  InfeasiblePi,
  DegenerateRegressor,
  DegenerateExceedances,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures that arise inside the estimators rather than from bad
// input; the CLI maps these to exit code 3.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curetail
