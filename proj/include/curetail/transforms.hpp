#pragma once

#include <optional>
#include <string_view>

namespace curetail {

// Tail model targeted by a probability plot. The fitted slope estimates
// 1/gamma (Pareto), tau (Weibull) or 1/sigma (log-normal).
enum class PlottingModel { Pareto, Weibull, LogNormal };

std::string_view to_string(PlottingModel model) noexcept;
std::optional<PlottingModel> parse_plotting_model(std::string_view name) noexcept;

// s(t) on t in (0,1):
//   Pareto     -log t
//   Weibull    log(-log t)
//   LogNormal  Phi^{-1}(1 - t)
// Throws Error(TransformDomain) outside the open interval.
double s_transform(PlottingModel model, double t);

// Inverse standard normal CDF (Wichura's AS241, ~1e-16 relative accuracy).
// Throws Error(TransformDomain) for u outside (0,1).
double norm_quantile(double u);

double norm_cdf(double x) noexcept;
double norm_pdf(double x) noexcept;

// The loss functions evaluate s(1 - u) with u = F^/p. Working in u keeps
// precision when u is small (log1p) and avoids forming 1 - u for Phi^{-1}.
// No domain checks; callers screen u first.
double transform_of_ratio(PlottingModel model, double u) noexcept;
// d/du s(1 - u).
double transform_of_ratio_derivative(PlottingModel model, double u) noexcept;

}  // namespace curetail
