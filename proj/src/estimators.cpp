#include "curetail/estimators.hpp"

namespace curetail {

std::string_view label(Estimator estimator) noexcept {
  switch (estimator) {
    case Estimator::Gumbel: return "g";
    case Estimator::Frechet: return "f";
    case Estimator::Pareto: return "p";
    case Estimator::Weibull: return "w";
    case Estimator::LogNormal: return "l";
    case Estimator::Benchmark: return "pn";
  }
  return "?";
}

std::string_view name(Estimator estimator) noexcept {
  switch (estimator) {
    case Estimator::Gumbel: return "gumbel-pot";
    case Estimator::Frechet: return "frechet-pot";
    case Estimator::Pareto: return "pareto";
    case Estimator::Weibull: return "weibull";
    case Estimator::LogNormal: return "lognormal";
    case Estimator::Benchmark: return "pn";
  }
  return "?";
}

std::optional<Estimator> parse_estimator(std::string_view text) noexcept {
  for (Estimator e : {Estimator::Gumbel, Estimator::Frechet, Estimator::Pareto, Estimator::Weibull,
                      Estimator::LogNormal, Estimator::Benchmark}) {
    if (text == label(e) || text == name(e)) return e;
  }
  return std::nullopt;
}

Estimate estimate(Estimator estimator, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                  const FitConfig& config) {
  Estimate out;
  out.estimator = estimator;
  switch (estimator) {
    case Estimator::Benchmark:
      out.p_n = out.p_hat = p_benchmark(curve, ordered);
      return out;
    case Estimator::Gumbel:
    case Estimator::Frechet: {
      const PotDomain domain = estimator == Estimator::Gumbel ? PotDomain::Gumbel : PotDomain::Frechet;
      const PotFit fit = pot_fit(ordered, curve, domain, config);
      out.p_hat = fit.p_hat;
      out.p_n = fit.p_n;
      out.tail_parameter = fit.scale_hat;
      out.loss = fit.loss;
      return out;
    }
    case Estimator::Pareto:
    case Estimator::Weibull:
    case Estimator::LogNormal: {
      const PlottingModel model = estimator == Estimator::Pareto    ? PlottingModel::Pareto
                                  : estimator == Estimator::Weibull ? PlottingModel::Weibull
                                                                    : PlottingModel::LogNormal;
      const CureFit fit = pp_fit(model, ordered, curve, config);
      out.p_hat = fit.p_hat;
      out.p_n = fit.p_n;
      out.tail_parameter = fit.slope_hat;
      out.loss = fit.loss;
      return out;
    }
  }
  return out;
}

}  // namespace curetail
