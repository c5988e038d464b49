#include "curetail/transforms.hpp"

#include <cmath>
#include <numbers>

#include "curetail/error.hpp"

namespace curetail {

std::string_view to_string(PlottingModel model) noexcept {
  switch (model) {
    case PlottingModel::Pareto: return "pareto";
    case PlottingModel::Weibull: return "weibull";
    case PlottingModel::LogNormal: return "lognormal";
  }
  return "unknown";
}

std::optional<PlottingModel> parse_plotting_model(std::string_view name) noexcept {
  if (name == "pareto") return PlottingModel::Pareto;
  if (name == "weibull") return PlottingModel::Weibull;
  if (name == "lognormal") return PlottingModel::LogNormal;
  return std::nullopt;
}

namespace {

template <std::size_t N>
double horner(const double (&c)[N], double x) {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// AS241 PPND16 coefficients, lowest order first.
constexpr double kCentralNum[] = {3.3871328727963666080e0,  1.3314166789178437745e+2,
                                  1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                  4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                  3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kCentralDen[] = {1.0,
                                  4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                  5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                  3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                  5.2264952788528545610e+3};
constexpr double kNearNum[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                               5.76949722146069140550e0, 3.64784832476320460504e0,
                               1.27045825245236838258e0, 2.41780725177450611770e-1,
                               2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kNearDen[] = {1.0,
                               2.05319162663775882187e0, 1.67638483018380384940e0,
                               6.89767334985100004550e-1, 1.48103976427480074590e-1,
                               1.51986665636164571966e-2, 5.47593808499534494600e-4,
                               1.05075007164441684324e-9};
constexpr double kTailNum[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                               1.78482653991729133580e0, 2.96560571828504891230e-1,
                               2.65321895265761230930e-2, 1.24266094738807843860e-3,
                               2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kTailDen[] = {1.0,
                               5.99832206555887937690e-1, 1.36929880922735805310e-1,
                               1.48753612908506148525e-2, 7.86869131145613259100e-4,
                               1.84631831751005468180e-5, 1.42151175831644588870e-7,
                               2.04426310338993978564e-15};

double ppnd16(double u) {
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner(kCentralNum, r) / horner(kCentralDen, r);
  }
  double r = q < 0.0 ? u : 1.0 - u;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = horner(kNearNum, r) / horner(kNearDen, r);
  } else {
    r -= 5.0;
    value = horner(kTailNum, r) / horner(kTailDen, r);
  }
  return q < 0.0 ? -value : value;
}

}  // namespace

double norm_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::TransformDomain, "normal quantile needs u in (0,1)");
  return ppnd16(u);
}

double norm_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double s_transform(PlottingModel model, double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::TransformDomain, "s-transform needs t in (0,1)");
  switch (model) {
    case PlottingModel::Pareto: return -std::log(t);
    case PlottingModel::Weibull: return std::log(-std::log(t));
    case PlottingModel::LogNormal: return ppnd16(1.0 - t);
  }
  return 0.0;
}

double transform_of_ratio(PlottingModel model, double u) noexcept {
  switch (model) {
    case PlottingModel::Pareto: return -std::log1p(-u);
    case PlottingModel::Weibull: return std::log(-std::log1p(-u));
    case PlottingModel::LogNormal: return ppnd16(u);
  }
  return 0.0;
}

double transform_of_ratio_derivative(PlottingModel model, double u) noexcept {
  switch (model) {
    case PlottingModel::Pareto: return 1.0 / (1.0 - u);
    case PlottingModel::Weibull: return 1.0 / ((1.0 - u) * -std::log1p(-u));
    case PlottingModel::LogNormal: return 1.0 / norm_pdf(ppnd16(u));
  }
  return 0.0;
}

}  // namespace curetail
