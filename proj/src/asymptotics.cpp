#include "curetail/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "curetail/error.hpp"

namespace curetail {

void CensoringTail::validate() const {
  if (!(gamma_c < 0.0) || !std::isfinite(gamma_c)) {
    throw Error(ErrorCode::InvalidConfig, "gamma_c must be a finite negative number");
  }
  if (k < 1 || k >= n) throw Error(ErrorCode::InvalidConfig, "need 1 <= k < n");
}

double h_gamma(double gamma_c, double t) {
  if (!(t >= 1.0)) throw Error(ErrorCode::InvalidConfig, "h needs t >= 1");
  const double a = 1.0 + gamma_c;
  const double log_t = std::log(t);
  if (std::fabs(a) < 1e-12) return log_t;
  return std::expm1(a * log_t) / a;
}

namespace {

std::vector<double> weights(const CensoringTail& tail) {
  std::vector<double> a(tail.k + 1, 0.0);
  const double kp1 = static_cast<double>(tail.k + 1);
  for (std::size_t j = 1; j <= tail.k; ++j) {
    // 1 - (j/(k+1))^(-gamma_c)
    a[j] = -std::expm1(-tail.gamma_c * std::log(static_cast<double>(j) / kp1));
  }
  return a;
}

}  // namespace

double sigma2_k(const CensoringTail& tail) {
  tail.validate();
  const std::vector<double> a = weights(tail);
  const double kp1 = static_cast<double>(tail.k + 1);
  // pairs with max(j1, j2) = m contribute h((k+1)/m) * (a_m^2 + 2 a_m sum_{j<m} a_j)
  double prefix = 0.0;
  double total = 0.0;
  for (std::size_t m = 1; m <= tail.k; ++m) {
    const double h = h_gamma(tail.gamma_c, kp1 / static_cast<double>(m));
    total += h * a[m] * (a[m] + 2.0 * prefix);
    prefix += a[m];
  }
  const double kk = static_cast<double>(tail.k);
  return total / (kk * kk);
}

double sigma2_k_direct(const CensoringTail& tail) {
  tail.validate();
  const std::vector<double> a = weights(tail);
  const double kp1 = static_cast<double>(tail.k + 1);
  double total = 0.0;
  for (std::size_t j1 = 1; j1 <= tail.k; ++j1) {
    for (std::size_t j2 = 1; j2 <= tail.k; ++j2) {
      const double m = static_cast<double>(std::max(j1, j2));
      total += a[j1] * a[j2] * h_gamma(tail.gamma_c, kp1 / m);
    }
  }
  const double kk = static_cast<double>(tail.k);
  return total / (kk * kk);
}

}  // namespace curetail
