#pragma once

// Penalised probability-plot fits of the cure model. For the top k order
// statistics the plot
//
//   ( log Z_{n-j+1,n} ,  s(1 - F^_n(Z_{n-j+1,n}) / p) ),  j = 1..k
//
// is linear under the targeted tail model once p is right. The loss is the
// squared deviation from a line through the reference point Z_{n-k,n},
//
//   SS(beta, p) = sum_j [ s(1 - F^_j/p) - s(1 - F^_ref/p) - beta * x_j ]^2 + lambda (p - p_n)^2
//
// with x_j = log(Z_{n-j+1,n} / Z_{n-k,n}) and p_n = F^_n(Z_{n,n}).

#include <cstddef>
#include <string>
#include <vector>

#include "curetail/fit_config.hpp"
#include "curetail/survival.hpp"
#include "curetail/transforms.hpp"

namespace curetail {

struct LossValue {
  double loss = 0.0;
  std::size_t skipped_terms = 0;
};

struct CureFit {
  PlottingModel model = PlottingModel::Pareto;
  double p_hat = 0.0;
  double slope_hat = 0.0;  // tau, 1/sigma or 1/gamma depending on model
  double loss = 0.0;
  double p_n = 0.0;
  std::size_t k_used = 0;
  double feasible_lower = 0.0;
  std::size_t skipped_terms = 0;
  bool boundary_p = false;  // no admissible interior p; p_hat pinned to 1
};

struct PlotSeries {
  std::string model;
  std::size_t k = 0;
  std::vector<double> x;  // ascending
  std::vector<double> y;
  std::size_t dropped = 0;  // points whose transform left the domain
};

// p_n = F^(Z_{n,n}), the benchmark cure-model estimator.
double p_benchmark(const KaplanMeierCurve& curve, const OrderedSample& ordered);

// Terms with 1 - F^_j/p within this distance of 0 (or of 1, where s diverges
// there) are excluded from the loss and counted.
inline constexpr double kBoundaryEpsilon = 1e-15;

// The top-k design of a probability plot: regressors and KM values, ready for
// repeated loss evaluation across p.
class PlotRegression {
 public:
  PlotRegression(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                 std::size_t k);

  struct Profile {
    double beta = 0.0;
    double loss = 0.0;        // +inf when no usable term remains
    double derivative = 0.0;  // d loss / dp along the profile
    std::size_t skipped_terms = 0;
  };

  PlottingModel model() const noexcept { return model_; }
  std::size_t k() const noexcept { return x_.size(); }
  // Infimum of admissible p: the largest F^ among the top k.
  double feasible_lower() const noexcept { return feasible_lower_; }

  // Loss at an arbitrary (beta, p); p must exceed feasible_lower().
  LossValue loss(double beta, double p, double lambda, double p_n) const;
  // beta profiled out in closed form: beta(p) = sum x_j y_j / sum x_j^2.
  Profile profile(double p, double lambda, double p_n) const;

 private:
  bool retained(double u) const noexcept;
  double reference_value(double p) const;

  PlottingModel model_;
  std::vector<double> x_;
  std::vector<double> top_cdf_;
  double reference_cdf_ = 0.0;
  double feasible_lower_ = 0.0;
};

LossValue pp_loss(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                  std::size_t k, double beta, double p, double lambda, double p_n);

CureFit pp_fit(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
               const FitConfig& config);

// Goodness-of-fit plot at a fitted p_hat; p_hat may equal the feasibility
// bound, in which case the top point(s) drop out.
PlotSeries gof_series(PlottingModel model, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                      std::size_t k, double p_hat);

}  // namespace curetail
