#pragma once

// Closed-form pieces of the large-sample behaviour of the probability-plot
// estimators under insufficient follow-up, where the censoring law has a
// finite endpoint with extreme value index gamma_c < 0. They are reported as
// diagnostics; the remaining terms of the limit depend on population
// quantities that cannot be estimated from one sample.

#include <cstddef>

namespace curetail {

struct CensoringTail {
  double gamma_c = -1.0;  // < 0
  std::size_t k = 1;      // 1 <= k < n
  std::size_t n = 2;

  void validate() const;  // throws Error(InvalidConfig)
};

// h(t) = integral_1^t u^gamma_c du = (t^(1+gamma_c) - 1) / (1 + gamma_c), log t at gamma_c = -1.
double h_gamma(double gamma_c, double t);

// sigma_k^2 = k^-2 sum_{j1,j2=1..k} a_{j1} a_{j2} h((k+1) / max(j1, j2)),
// a_j = 1 - (j/(k+1))^(-gamma_c). O(k) by grouping on the larger index.
double sigma2_k(const CensoringTail& tail);

// Direct O(k^2) double sum; reference for sigma2_k.
double sigma2_k_direct(const CensoringTail& tail);

}  // namespace curetail
