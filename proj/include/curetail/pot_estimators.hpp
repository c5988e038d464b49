#pragma once

// Peaks-over-threshold cure-rate fits. Above Z_{n-k,n} the exceedances of a
// Gumbel-domain susceptible law are roughly exponential with scale sigma; for
// Frechet-domain laws the log-exceedances are roughly exponential with mean
// gamma. With F^_k the product-limit estimator of the exceedances,
//
//   SS(scale, pi) = sum_j [ E_j + scale * log(1 - F^_k(E_j)/pi) ]^2 + lambda (p - p_n)^2
//
// and the cure-model p follows from 1 - pi = (1 - p) / p(k), where
// p(k) = 1 - F^_n(Z_{n-k,n}) uses the curve of the original observations.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "curetail/fit_config.hpp"
#include "curetail/pp_estimators.hpp"
#include "curetail/survival.hpp"

namespace curetail {

enum class PotDomain { Gumbel, Frechet };

std::string_view to_string(PotDomain domain) noexcept;

struct PotFit {
  PotDomain domain = PotDomain::Gumbel;
  double scale_hat = 0.0;  // sigma (Gumbel) or gamma (Frechet)
  double pi_hat = 1.0;
  double p_hat = 0.0;
  double p_k = 0.0;
  double p_n = 0.0;
  double loss = 0.0;
  double pi_lower = 0.0;
  std::size_t k_used = 0;
  std::size_t skipped_terms = 0;
  bool clipped = false;      // recovered p fell outside [0,1]
  bool boundary_pi = false;  // largest exceedance is an event; pi pinned to 1
};

// p = 1 - (1 - pi) p(k), unclipped.
inline double recover_p(double pi, double p_k) { return 1.0 - (1.0 - pi) * p_k; }

// Exceedances with their KM curve, prepared for repeated loss evaluation.
class ExceedanceRegression {
 public:
  ExceedanceRegression(const KaplanMeierCurve& exc_curve, std::span<const double> exceedance_values);

  struct Profile {
    double scale = 0.0;
    double loss = 0.0;  // +inf when the scale is not identified
    double derivative = 0.0;
    std::size_t skipped_terms = 0;
  };

  // Infimum of admissible pi: the largest F^_k among the exceedances.
  double pi_lower() const noexcept { return pi_lower_; }

  LossValue loss(double scale, double pi, double lambda, double p_n, double p_k) const;
  // scale profiled out: scale(pi) = -sum E_j w_j / sum w_j^2, w_j = log(1 - F^_k(E_j)/pi).
  Profile profile(double pi, double lambda, double p_n, double p_k) const;

 private:
  std::vector<double> values_;
  std::vector<double> cdf_;
  double pi_lower_ = 0.0;
};

LossValue pot_loss(const KaplanMeierCurve& exc_curve, std::span<const double> exceedance_values,
                   double scale, double pi, double lambda, double p_n, double p_k);

PotFit pot_fit(const OrderedSample& ordered, const KaplanMeierCurve& full_curve, PotDomain domain,
               const FitConfig& config);

// (E_j, -scale_hat * log(1 - F^_k(E_j)/pi_hat)); a perfect fit lies on the diagonal.
PlotSeries pot_gof_series(const OrderedSample& ordered, const KaplanMeierCurve& full_curve,
                          PotDomain domain, std::size_t k, double pi_hat, double scale_hat);

}  // namespace curetail
