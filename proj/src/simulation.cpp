#include "curetail/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "curetail/error.hpp"
#include "curetail/transforms.hpp"

namespace curetail {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

double quantile(const SusceptibleLaw& law, double u) {
  const double log_survival = std::log1p(-u);  // log(1 - u)
  return std::visit(
      overloaded{
          [&](const ExponentialLaw& e) { return -log_survival / e.rate; },
          [&](const LogNormalLaw& l) { return std::exp(l.mu + l.sigma * norm_quantile(u)); },
          [&](const WeibullLaw& w) { return std::pow(-log_survival, 1.0 / w.shape); },
          [&](const ParetoLaw& p) { return std::exp(-p.gamma * log_survival); },
          [&](const BurrLaw& b) { return std::pow(std::expm1(-log_survival / b.d), 1.0 / b.c); },
      },
      law);
}

double quantile(const CensoringLaw& law, double u) {
  return std::visit(overloaded{
                        [&](const ShiftedExponentialLaw& e) { return e.shift - std::log1p(-u) / e.rate; },
                        [&](const UniformLaw& un) { return un.lower + (un.upper - un.lower) * u; },
                    },
                    law);
}

std::string describe(const SusceptibleLaw& law) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ExponentialLaw& e) { os << "Exponential(rate=" << e.rate << ")"; },
                 [&](const LogNormalLaw& l) { os << "LogNormal(" << l.mu << "," << l.sigma << ")"; },
                 [&](const WeibullLaw& w) { os << "Weibull(shape=" << w.shape << ")"; },
                 [&](const ParetoLaw& p) { os << "Pareto(gamma=" << p.gamma << ")"; },
                 [&](const BurrLaw& b) { os << "Burr(c=" << b.c << ",d=" << b.d << ")"; },
             },
             law);
  return os.str();
}

std::string describe(const CensoringLaw& law) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ShiftedExponentialLaw& e) {
                   os << "ShiftedExponential(rate=" << e.rate << ",shift=" << e.shift << ")";
                 },
                 [&](const UniformLaw& u) { os << "Uniform(" << u.lower << "," << u.upper << ")"; },
             },
             law);
  return os.str();
}

void ScenarioSpec::validate() const {
  const bool susceptible_ok =
      std::visit(overloaded{
                     [](const ExponentialLaw& e) { return positive(e.rate); },
                     [](const LogNormalLaw& l) { return std::isfinite(l.mu) && positive(l.sigma); },
                     [](const WeibullLaw& w) { return positive(w.shape); },
                     [](const ParetoLaw& p) { return positive(p.gamma); },
                     [](const BurrLaw& b) { return positive(b.c) && positive(b.d); },
                 },
                 susceptible);
  if (!susceptible_ok) throw Error(ErrorCode::InvalidSpec, "susceptible law parameters out of domain");
  const bool censoring_ok = std::visit(
      overloaded{
          [](const ShiftedExponentialLaw& e) { return positive(e.rate) && std::isfinite(e.shift); },
          [](const UniformLaw& u) {
            return std::isfinite(u.lower) && std::isfinite(u.upper) && u.lower >= 0.0 && u.lower < u.upper;
          },
      },
      censoring);
  if (!censoring_ok) throw Error(ErrorCode::InvalidSpec, "censoring law parameters out of domain");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidSpec, "p must lie in (0,1)");
  if (n < 10) throw Error(ErrorCode::InvalidSpec, "n must be at least 10");
  if (reps < 1) throw Error(ErrorCode::InvalidSpec, "reps must be at least 1");
  if (lambda && !(*lambda >= 0.0)) throw Error(ErrorCode::InvalidSpec, "lambda must be non-negative");
  const std::size_t k = resolved_k();
  if (k < 2 || k > n - 1) throw Error(ErrorCode::InvalidSpec, "k must satisfy 2 <= k <= n-1");
}

std::size_t ScenarioSpec::resolved_k() const {
  switch (k_rule) {
    case KRule::NMinusOne: return n - 1;
    case KRule::FifthOfN: return n / 5;
    case KRule::Explicit: return k_explicit;
  }
  return n - 1;
}

double ScenarioSpec::resolved_lambda() const {
  return lambda ? *lambda : default_lambda(resolved_k(), n);
}

FitConfig ScenarioSpec::fit_config() const {
  FitConfig config;
  config.k = resolved_k();
  config.lambda = resolved_lambda();
  config.p_grid_resolution = p_grid_resolution;
  config.refine_tolerance = refine_tolerance;
  return config;
}

ScenarioSpec standard_scenario(int id, std::size_t n, double p, std::size_t reps, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.id = id;
  spec.n = n;
  spec.p = p;
  spec.reps = reps;
  spec.seed = seed;
  const ShiftedExponentialLaw long_follow_up{1.0 / 20.0, 1.0};
  switch (id) {
    case 1: spec.susceptible = ExponentialLaw{1.0}; spec.censoring = long_follow_up; spec.k_rule = KRule::NMinusOne; break;
    case 2: spec.susceptible = ExponentialLaw{1.0}; spec.censoring = UniformLaw{0.0, 3.0}; spec.k_rule = KRule::NMinusOne; break;
    case 3: spec.susceptible = LogNormalLaw{}; spec.censoring = UniformLaw{0.0, 6.0}; spec.k_rule = KRule::FifthOfN; break;
    case 4: spec.susceptible = LogNormalLaw{}; spec.censoring = UniformLaw{0.0, 2.0}; spec.k_rule = KRule::FifthOfN; break;
    case 5: spec.susceptible = WeibullLaw{0.5}; spec.censoring = UniformLaw{0.0, 6.0}; spec.k_rule = KRule::FifthOfN; break;
    case 6: spec.susceptible = WeibullLaw{0.5}; spec.censoring = UniformLaw{0.0, 2.0}; spec.k_rule = KRule::FifthOfN; break;
    case 7: spec.susceptible = ParetoLaw{0.5}; spec.censoring = long_follow_up; spec.k_rule = KRule::NMinusOne; break;
    case 8: spec.susceptible = ParetoLaw{0.5}; spec.censoring = UniformLaw{1.0, 5.0}; spec.k_rule = KRule::NMinusOne; break;
    case 9: spec.susceptible = BurrLaw{1.5, 1.5}; spec.censoring = UniformLaw{0.0, 4.0}; spec.k_rule = KRule::FifthOfN; break;
    case 10: spec.susceptible = BurrLaw{1.5, 1.5}; spec.censoring = UniformLaw{0.0, 2.0}; spec.k_rule = KRule::FifthOfN; break;
    default: throw Error(ErrorCode::InvalidSpec, "scenario id must be 1..10");
  }
  spec.validate();
  return spec;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

double StreamRng::uniform() {
  // midpoint of one of 2^53 equal cells: never 0 or 1
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

SurvivalSample sample_scenario(const ScenarioSpec& spec, std::size_t rep_index) {
  spec.validate();
  StreamRng rng(spec.seed, rep_index);
  SurvivalSample sample;
  sample.times.resize(spec.n);
  sample.events.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double u_cure = rng.uniform();
    const double u_event = rng.uniform();
    const double u_censor = rng.uniform();
    const bool susceptible = u_cure <= spec.p;
    const double t = susceptible ? quantile(spec.susceptible, u_event)
                                 : std::numeric_limits<double>::infinity();
    const double c = quantile(spec.censoring, u_censor);
    sample.events[i] = t <= c ? 1 : 0;
    sample.times[i] = sample.events[i] ? t : c;
  }
  return sample;
}

double sample_quantile(std::vector<double> values, double prob) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double h = prob * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ReplicationSummary summarize(Estimator estimator, double true_p, std::vector<std::size_t> reps,
                             std::vector<double> estimates, std::vector<RepFailure> failures) {
  ReplicationSummary out;
  out.estimator = estimator;
  out.reps = std::move(reps);
  out.estimates = std::move(estimates);
  out.failures = std::move(failures);
  out.biases.reserve(out.estimates.size());
  out.squared_errors.reserve(out.estimates.size());
  for (double e : out.estimates) {
    out.biases.push_back(e - true_p);
    out.squared_errors.push_back((e - true_p) * (e - true_p));
  }
  if (out.estimates.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.summary = {nan, nan, nan, nan, nan, nan};
    return out;
  }
  const double m = static_cast<double>(out.estimates.size());
  out.summary.mean = std::accumulate(out.estimates.begin(), out.estimates.end(), 0.0) / m;
  out.summary.mean_bias = std::accumulate(out.biases.begin(), out.biases.end(), 0.0) / m;
  out.summary.rmse =
      std::sqrt(std::accumulate(out.squared_errors.begin(), out.squared_errors.end(), 0.0) / m);
  out.summary.median = sample_quantile(out.estimates, 0.5);
  out.summary.q25 = sample_quantile(out.estimates, 0.25);
  out.summary.q75 = sample_quantile(out.estimates, 0.75);
  return out;
}

RepOutcome run_replication(const ScenarioSpec& spec, const std::vector<Estimator>& estimators,
                           std::size_t rep_index, bool parallel_scan) {
  RepOutcome out;
  out.estimates.assign(estimators.size(), std::numeric_limits<double>::quiet_NaN());
  out.errors.assign(estimators.size(), std::string());
  const SurvivalSample sample = sample_scenario(spec, rep_index);
  const OrderedSample ordered = order_sample(sample);
  const KaplanMeierCurve curve = km_fit(ordered);
  FitConfig config = spec.fit_config();
  config.parallel_scan = parallel_scan;
  for (std::size_t e = 0; e < estimators.size(); ++e) {
    try {
      out.estimates[e] = estimate(estimators[e], ordered, curve, config).p_hat;
    } catch (const std::exception& ex) {
      out.errors[e] = ex.what();
    }
  }
  return out;
}

namespace {

std::vector<Estimator> with_benchmark(std::vector<Estimator> estimators) {
  if (estimators.empty()) throw Error(ErrorCode::InvalidSpec, "no estimators requested");
  if (std::find(estimators.begin(), estimators.end(), Estimator::Benchmark) == estimators.end()) {
    estimators.push_back(Estimator::Benchmark);
  }
  return estimators;
}

std::vector<ReplicationSummary> reduce(const ScenarioSpec& spec, const std::vector<Estimator>& estimators,
                                       const std::vector<RepOutcome>& outcomes) {
  std::vector<ReplicationSummary> out;
  out.reserve(estimators.size());
  for (std::size_t e = 0; e < estimators.size(); ++e) {
    std::vector<std::size_t> reps;
    std::vector<double> estimates;
    std::vector<RepFailure> failures;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      if (outcomes[r].errors[e].empty()) {
        reps.push_back(r);
        estimates.push_back(outcomes[r].estimates[e]);
      } else {
        failures.push_back({r, outcomes[r].errors[e]});
      }
    }
    out.push_back(summarize(estimators[e], spec.p, std::move(reps), std::move(estimates), std::move(failures)));
  }
  return out;
}

}  // namespace

std::vector<ReplicationSummary> run_scenario(const ScenarioSpec& spec, std::vector<Estimator> estimators) {
  spec.validate();
  estimators = with_benchmark(std::move(estimators));
  std::vector<RepOutcome> outcomes(spec.reps);
  const auto reps = static_cast<std::ptrdiff_t>(spec.reps);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    outcomes[static_cast<std::size_t>(r)] =
        run_replication(spec, estimators, static_cast<std::size_t>(r), false);
  }
  return reduce(spec, estimators, outcomes);
}

std::vector<ReplicationSummary> run_scenario_serial(const ScenarioSpec& spec,
                                                    std::vector<Estimator> estimators) {
  spec.validate();
  estimators = with_benchmark(std::move(estimators));
  std::vector<RepOutcome> outcomes(spec.reps);
  for (std::size_t r = 0; r < spec.reps; ++r) outcomes[r] = run_replication(spec, estimators, r, false);
  return reduce(spec, estimators, outcomes);
}

}  // namespace curetail
