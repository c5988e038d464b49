#include "curetail/pp_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curetail/error.hpp"
#include "curetail/profile_search.hpp"

namespace curetail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidK, "k=" + std::to_string(k) + " must satisfy 1 <= k <= n-1 (n=" +
                                         std::to_string(n) + ")");
  }
}

// Usable transform argument t = 1 - u. Pareto's s(t) = -log t has the finite
// limit 0 at t = 1 (u = 0), the other two diverge there.
bool usable_ratio(PlottingModel model, double u) noexcept {
  if (1.0 - u <= kBoundaryEpsilon) return false;
  if (model != PlottingModel::Pareto && u <= kBoundaryEpsilon) return false;
  return true;
}

}  // namespace

double p_benchmark(const KaplanMeierCurve& curve, const OrderedSample& ordered) {
  if (ordered.size() == 0) throw Error(ErrorCode::EmptySample, "sample has no observations");
  return curve(ordered.sorted_times.back());
}

PlotRegression::PlotRegression(PlottingModel model, const OrderedSample& ordered,
                               const KaplanMeierCurve& curve, std::size_t k)
    : model_(model) {
  check_k(k, ordered.size());
  const double threshold = ordered.threshold(k);
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::NonPositiveThreshold, "probability plots need Z_{n-k,n} > 0");
  }
  x_.resize(k);
  top_cdf_.resize(k);
  double sxx = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double z = ordered.top(j);
    x_[j - 1] = std::log(z / threshold);
    top_cdf_[j - 1] = curve(z);
    sxx += x_[j - 1] * x_[j - 1];
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::DegenerateRegressor, "the top k+1 observations are all equal");
  }
  reference_cdf_ = curve(threshold);
  feasible_lower_ = *std::max_element(top_cdf_.begin(), top_cdf_.end());
  if (model_ != PlottingModel::Pareto && reference_cdf_ <= kBoundaryEpsilon) {
    throw Error(ErrorCode::TransformDomain,
                "F^ is 0 at Z_{n-k,n}, where the " + std::string(to_string(model_)) +
                    " transform diverges; use a smaller k");
  }
}

bool PlotRegression::retained(double u) const noexcept { return usable_ratio(model_, u); }

double PlotRegression::reference_value(double p) const {
  return transform_of_ratio(model_, reference_cdf_ / p);
}

LossValue PlotRegression::loss(double beta, double p, double lambda, double p_n) const {
  if (!(p > feasible_lower_) || p > 1.0) {
    throw Error(ErrorCode::InfeasibleP, "p=" + std::to_string(p) + " outside (" +
                                            std::to_string(feasible_lower_) + ", 1]");
  }
  const double y_ref = reference_value(p);
  LossValue out;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    const double u = top_cdf_[j] / p;
    if (!retained(u)) {
      ++out.skipped_terms;
      continue;
    }
    const double r = transform_of_ratio(model_, u) - y_ref - beta * x_[j];
    out.loss += r * r;
  }
  out.loss += lambda * (p - p_n) * (p - p_n);
  return out;
}

PlotRegression::Profile PlotRegression::profile(double p, double lambda, double p_n) const {
  Profile out;
  const double u_ref = reference_cdf_ / p;
  const double y_ref = transform_of_ratio(model_, u_ref);
  const double dy_ref = transform_of_ratio_derivative(model_, u_ref) * reference_cdf_;

  std::vector<double> y(x_.size(), std::numeric_limits<double>::quiet_NaN());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    const double u = top_cdf_[j] / p;
    if (!retained(u)) {
      ++out.skipped_terms;
      continue;
    }
    y[j] = transform_of_ratio(model_, u) - y_ref;
    sxy += x_[j] * y[j];
    sxx += x_[j] * x_[j];
  }
  if (sxx == 0.0) {
    out.loss = kInf;
    out.derivative = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.beta = sxy / sxx;
  const double p2 = p * p;
  double loss = 0.0;
  double derivative = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    if (std::isnan(y[j])) continue;
    const double r = y[j] - out.beta * x_[j];
    loss += r * r;
    const double u = top_cdf_[j] / p;
    const double dy = (dy_ref - transform_of_ratio_derivative(model_, u) * top_cdf_[j]) / p2;
    derivative += 2.0 * r * dy;
  }
  out.loss = loss + lambda * (p - p_n) * (p - p_n);
  out.derivative = derivative + 2.0 * lambda * (p - p_n);
  return out;
}

LossValue pp_loss(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                  std::size_t k, double beta, double p, double lambda, double p_n) {
  return PlotRegression(model, ordered, curve, k).loss(beta, p, lambda, p_n);
}

CureFit pp_fit(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
               const FitConfig& config) {
  config.validate(ordered.size());
  const PlotRegression regression(model, ordered, curve, config.k);

  CureFit fit;
  fit.model = model;
  fit.k_used = config.k;
  fit.p_n = p_benchmark(curve, ordered);
  fit.feasible_lower = regression.feasible_lower();

  double p_hat = 1.0;
  if (fit.feasible_lower >= 1.0 - kBoundaryEpsilon) {
    fit.boundary_p = true;
  } else {
    const auto f = [&](double p) { return regression.profile(p, config.lambda, fit.p_n).loss; };
    const auto df = [&](double p) { return regression.profile(p, config.lambda, fit.p_n).derivative; };
    const ProfileMinimum best =
        minimize_profile(f, df, fit.feasible_lower, 1.0, config.search_options());
    if (!std::isfinite(best.value)) {
      throw Error(ErrorCode::DegenerateRegressor, "no admissible p leaves a usable regression");
    }
    p_hat = best.x;
  }
  const PlotRegression::Profile at = regression.profile(p_hat, config.lambda, fit.p_n);
  if (!std::isfinite(at.loss)) {
    throw Error(ErrorCode::DegenerateRegressor, "no usable regression terms at p = " + std::to_string(p_hat));
  }
  fit.p_hat = p_hat;
  fit.slope_hat = at.beta;
  fit.loss = at.loss;
  fit.skipped_terms = at.skipped_terms;
  return fit;
}

PlotSeries gof_series(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                      std::size_t k, double p_hat) {
  check_k(k, ordered.size());
  if (!(ordered.threshold(k) > 0.0)) {
    throw Error(ErrorCode::NonPositiveThreshold, "probability plots need Z_{n-k,n} > 0");
  }
  double lower = 0.0;
  for (std::size_t j = 1; j <= k; ++j) lower = std::max(lower, curve(ordered.top(j)));
  if (!(p_hat >= lower) || p_hat > 1.0) {
    throw Error(ErrorCode::InfeasibleP, "p_hat=" + std::to_string(p_hat) + " below the feasibility bound " +
                                            std::to_string(lower));
  }
  PlotSeries series;
  series.model = std::string(to_string(model));
  series.k = k;
  for (std::size_t j = k; j >= 1; --j) {
    const double z = ordered.top(j);
    const double u = curve(z) / p_hat;
    const double y = usable_ratio(model, u) ? transform_of_ratio(model, u) : kInf;
    if (!std::isfinite(y)) {
      ++series.dropped;
      continue;
    }
    series.x.push_back(std::log(z));
    series.y.push_back(y);
  }
  return series;
}

}  // namespace curetail
