#include "curetail/error.hpp"

namespace curetail {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::NonPositiveThreshold: return "NonPositiveThreshold";
    case ErrorCode::InvalidFraction: return "InvalidFraction";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::KTooSmallForStress: return "KTooSmallForStress";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InvalidStatus: return "InvalidStatus";
    case ErrorCode::Io: return "Io";
    case ErrorCode::TransformDomain: return "TransformDomain";
    case ErrorCode::InfeasibleP: return "InfeasibleP";
    case ErrorCode::InfeasiblePi: return "InfeasiblePi";
    case ErrorCode::DegenerateRegressor: return "DegenerateRegressor";
    case ErrorCode::DegenerateExceedances: return "DegenerateExceedances";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::TransformDomain:
    case ErrorCode::InfeasibleP:
    case ErrorCode::InfeasiblePi:
    case ErrorCode::DegenerateRegressor:
    case ErrorCode::DegenerateExceedances:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace curetail
