#include "curetail/pot_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curetail/error.hpp"
#include "curetail/profile_search.hpp"

namespace curetail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool usable(double cdf, double pi) noexcept { return 1.0 - cdf / pi > kBoundaryEpsilon; }

SurvivalSample domain_exceedances(const OrderedSample& ordered, PotDomain domain, std::size_t k) {
  SurvivalSample exc = exceedances(ordered, k, domain == PotDomain::Frechet);
  if (std::all_of(exc.times.begin(), exc.times.end(), [](double e) { return e == 0.0; })) {
    throw Error(ErrorCode::DegenerateExceedances, "all exceedances are zero");
  }
  return exc;
}

}  // namespace

std::string_view to_string(PotDomain domain) noexcept {
  return domain == PotDomain::Gumbel ? "gumbel-pot" : "frechet-pot";
}

ExceedanceRegression::ExceedanceRegression(const KaplanMeierCurve& exc_curve,
                                           std::span<const double> exceedance_values)
    : values_(exceedance_values.begin(), exceedance_values.end()) {
  cdf_.reserve(values_.size());
  for (double e : values_) cdf_.push_back(exc_curve(e));
  pi_lower_ = cdf_.empty() ? 0.0 : *std::max_element(cdf_.begin(), cdf_.end());
}

LossValue ExceedanceRegression::loss(double scale, double pi, double lambda, double p_n,
                                     double p_k) const {
  if (!(pi > pi_lower_) || pi > 1.0) {
    throw Error(ErrorCode::InfeasiblePi, "pi=" + std::to_string(pi) + " outside (" +
                                             std::to_string(pi_lower_) + ", 1]");
  }
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidConfig, "scale must be positive");
  LossValue out;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!usable(cdf_[j], pi)) {
      ++out.skipped_terms;
      continue;
    }
    const double r = values_[j] + scale * std::log1p(-cdf_[j] / pi);
    out.loss += r * r;
  }
  const double dp = recover_p(pi, p_k) - p_n;
  out.loss += lambda * dp * dp;
  return out;
}

ExceedanceRegression::Profile ExceedanceRegression::profile(double pi, double lambda, double p_n,
                                                            double p_k) const {
  Profile out;
  std::vector<double> w(values_.size(), std::numeric_limits<double>::quiet_NaN());
  double sew = 0.0;
  double sww = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!usable(cdf_[j], pi)) {
      ++out.skipped_terms;
      continue;
    }
    w[j] = std::log1p(-cdf_[j] / pi);
    sew += values_[j] * w[j];
    sww += w[j] * w[j];
  }
  if (sww == 0.0) {
    out.loss = kInf;
    out.derivative = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.scale = -sew / sww;
  const double pi2 = pi * pi;
  double loss = 0.0;
  double derivative = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (std::isnan(w[j])) continue;
    const double r = values_[j] + out.scale * w[j];
    loss += r * r;
    const double dw = (cdf_[j] / pi2) / (1.0 - cdf_[j] / pi);
    derivative += 2.0 * r * out.scale * dw;
  }
  const double dp = recover_p(pi, p_k) - p_n;
  out.loss = loss + lambda * dp * dp;
  out.derivative = derivative + 2.0 * lambda * dp * p_k;
  return out;
}

LossValue pot_loss(const KaplanMeierCurve& exc_curve, std::span<const double> exceedance_values,
                   double scale, double pi, double lambda, double p_n, double p_k) {
  return ExceedanceRegression(exc_curve, exceedance_values).loss(scale, pi, lambda, p_n, p_k);
}

PotFit pot_fit(const OrderedSample& ordered, const KaplanMeierCurve& full_curve, PotDomain domain,
               const FitConfig& config) {
  config.validate(ordered.size());
  const SurvivalSample exc = domain_exceedances(ordered, domain, config.k);
  const KaplanMeierCurve exc_curve = km_fit(exc);
  const ExceedanceRegression regression(exc_curve, exc.times);

  PotFit fit;
  fit.domain = domain;
  fit.k_used = config.k;
  fit.p_n = p_benchmark(full_curve, ordered);
  fit.p_k = 1.0 - full_curve(ordered.threshold(config.k));
  fit.pi_lower = regression.pi_lower();
  if (fit.pi_lower <= 0.0) {
    throw Error(ErrorCode::DegenerateExceedances, "no events among the top k observations");
  }

  double pi_hat = 1.0;
  if (fit.pi_lower >= 1.0 - kBoundaryEpsilon) {
    fit.boundary_pi = true;
  } else {
    const auto f = [&](double pi) {
      return regression.profile(pi, config.lambda, fit.p_n, fit.p_k).loss;
    };
    const auto df = [&](double pi) {
      return regression.profile(pi, config.lambda, fit.p_n, fit.p_k).derivative;
    };
    const ProfileMinimum best = minimize_profile(f, df, fit.pi_lower, 1.0, config.search_options());
    if (!std::isfinite(best.value)) {
      throw Error(ErrorCode::DegenerateExceedances, "scale is not identified for any admissible pi");
    }
    pi_hat = best.x;
  }
  const ExceedanceRegression::Profile at = regression.profile(pi_hat, config.lambda, fit.p_n, fit.p_k);
  if (!std::isfinite(at.loss)) {
    throw Error(ErrorCode::DegenerateExceedances, "scale is not identified at pi = 1");
  }
  fit.pi_hat = pi_hat;
  fit.scale_hat = at.scale;
  fit.loss = at.loss;
  fit.skipped_terms = at.skipped_terms;
  const double p = recover_p(pi_hat, fit.p_k);
  fit.clipped = p < 0.0 || p > 1.0;
  fit.p_hat = std::clamp(p, 0.0, 1.0);
  return fit;
}

PlotSeries pot_gof_series(const OrderedSample& ordered, [[maybe_unused]] const KaplanMeierCurve& full_curve,
                          PotDomain domain, std::size_t k, double pi_hat, double scale_hat) {
  const SurvivalSample exc = domain_exceedances(ordered, domain, k);
  const KaplanMeierCurve exc_curve = km_fit(exc);
  const double lower = exc_curve.last_value();
  if (!(pi_hat >= lower) || pi_hat > 1.0) {
    throw Error(ErrorCode::InfeasiblePi, "pi_hat=" + std::to_string(pi_hat) +
                                             " below the feasibility bound " + std::to_string(lower));
  }
  PlotSeries series;
  series.model = std::string(to_string(domain));
  series.k = k;
  for (std::size_t j = 0; j < exc.size(); ++j) {
    const double cdf = exc_curve(exc.times[j]);
    if (!usable(cdf, pi_hat)) {
      ++series.dropped;
      continue;
    }
    series.x.push_back(exc.times[j]);
    series.y.push_back(-scale_hat * std::log1p(-cdf / pi_hat));
  }
  return series;
}

}  // namespace curetail
