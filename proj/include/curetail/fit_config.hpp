#pragma once

#include <cstddef>
#include <string_view>

#include "curetail/profile_search.hpp"

namespace curetail {

// Shared by the probability-plot and peaks-over-threshold fits.
struct FitConfig {
  std::size_t k = 0;             // number of top order statistics
  double lambda = 0.0;           // penalty weight on (p - p_n)^2
  int p_grid_resolution = 400;
  double refine_tolerance = 1e-12;
  bool parallel_scan = true;

  // Throws Error(InvalidK) or Error(InvalidConfig).
  void validate(std::size_t n) const;

  SearchOptions search_options() const {
    return {p_grid_resolution, refine_tolerance, parallel_scan};
  }
};

// The default penalty weight k/n.
inline double default_lambda(std::size_t k, std::size_t n) {
  return static_cast<double>(k) / static_cast<double>(n);
}

// k given either as a count (>= 1) or as a fraction in (0,1), resolved to floor(frac * n).
std::size_t resolve_k(double k_spec, std::size_t n);

// Accepts "250" or "0.5"; throws Error(InvalidK) when malformed.
std::size_t parse_k(std::string_view text, std::size_t n);

// Accepts a non-negative number or "kn" for k/n.
double parse_lambda(std::string_view text, std::size_t k, std::size_t n);

// Config with k and the default lambda = k/n.
FitConfig make_config(std::size_t k, std::size_t n);

}  // namespace curetail
