#include "curetail/fit_config.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "curetail/error.hpp"

namespace curetail {

void FitConfig::validate(std::size_t n) const {
  if (n < 3 || k < 2 || k > n - 1) {
    throw Error(ErrorCode::InvalidK, "k=" + std::to_string(k) + " must satisfy 2 <= k <= n-1 (n=" +
                                         std::to_string(n) + ")");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidConfig, "lambda must be finite and non-negative");
  }
  if (p_grid_resolution < 10) throw Error(ErrorCode::InvalidConfig, "p grid resolution must be >= 10");
  if (!(refine_tolerance > 0.0)) throw Error(ErrorCode::InvalidConfig, "refine tolerance must be > 0");
}

std::size_t resolve_k(double k_spec, std::size_t n) {
  if (!std::isfinite(k_spec) || k_spec <= 0.0) {
    throw Error(ErrorCode::InvalidK, "k must be a positive count or a fraction in (0,1)");
  }
  if (k_spec < 1.0) return static_cast<std::size_t>(std::floor(k_spec * static_cast<double>(n)));
  if (k_spec != std::floor(k_spec)) throw Error(ErrorCode::InvalidK, "k above 1 must be an integer");
  return static_cast<std::size_t>(k_spec);
}

namespace {

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::size_t parse_k(std::string_view text, std::size_t n) {
  double value = 0.0;
  if (!parse_double(text, value)) throw Error(ErrorCode::InvalidK, "cannot parse k '" + std::string(text) + "'");
  return resolve_k(value, n);
}

double parse_lambda(std::string_view text, std::size_t k, std::size_t n) {
  if (text == "kn" || text == "k/n") return default_lambda(k, n);
  double value = 0.0;
  if (!parse_double(text, value) || !(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidConfig, "lambda must be a non-negative number or 'kn'");
  }
  return value;
}

FitConfig make_config(std::size_t k, std::size_t n) {
  FitConfig config;
  config.k = k;
  config.lambda = default_lambda(k, n);
  return config;
}

}  // namespace curetail
