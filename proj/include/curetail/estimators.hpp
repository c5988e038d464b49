#pragma once

// Uniform entry point over the five cure-rate fits and the p_n benchmark.

#include <optional>
#include <string_view>

#include "curetail/fit_config.hpp"
#include "curetail/pot_estimators.hpp"
#include "curetail/pp_estimators.hpp"
#include "curetail/survival.hpp"

namespace curetail {

enum class Estimator { Gumbel, Frechet, Pareto, Weibull, LogNormal, Benchmark };

// Short labels g, f, p, w, l, pn.
std::string_view label(Estimator estimator) noexcept;
// Long names gumbel-pot, frechet-pot, pareto, weibull, lognormal, pn.
std::string_view name(Estimator estimator) noexcept;
// Accepts either form.
std::optional<Estimator> parse_estimator(std::string_view text) noexcept;

struct Estimate {
  Estimator estimator = Estimator::Benchmark;
  double p_hat = 0.0;
  double p_n = 0.0;
  double tail_parameter = 0.0;  // slope (plots) or scale (POT); 0 for p_n
  double loss = 0.0;
};

// Throws curetail::Error on failure; the benchmark never fails.
Estimate estimate(Estimator estimator, const OrderedSample& ordered, const KaplanMeierCurve& curve,
                  const FitConfig& config);

}  // namespace curetail
