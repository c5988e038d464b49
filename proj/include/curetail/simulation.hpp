#pragma once

// Monte Carlo harness for the cure model F(t) = p F_0(t) observed under
// independent right censoring: scenario definitions, per-replication sample
// generation and replicated estimator comparisons.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "curetail/estimators.hpp"
#include "curetail/survival.hpp"

namespace curetail {

// Susceptible event-time laws, all sampled by inverse transform.
struct ExponentialLaw { double rate = 1.0; };                 // 1 - exp(-rate x), x >= 0
struct LogNormalLaw { double mu = 0.0; double sigma = 1.0; };
struct WeibullLaw { double shape = 0.5; };                    // 1 - exp(-x^shape)
struct ParetoLaw { double gamma = 0.5; };                     // 1 - x^(-1/gamma), x >= 1
struct BurrLaw { double c = 1.5; double d = 1.5; };           // 1 - (1 + x^c)^(-d)
using SusceptibleLaw = std::variant<ExponentialLaw, LogNormalLaw, WeibullLaw, ParetoLaw, BurrLaw>;

// Censoring laws.
struct ShiftedExponentialLaw { double rate = 0.05; double shift = 1.0; };  // shift + Exp(rate)
struct UniformLaw { double lower = 0.0; double upper = 1.0; };
using CensoringLaw = std::variant<ShiftedExponentialLaw, UniformLaw>;

double quantile(const SusceptibleLaw& law, double u);
double quantile(const CensoringLaw& law, double u);
std::string describe(const SusceptibleLaw& law);
std::string describe(const CensoringLaw& law);

enum class KRule { NMinusOne, FifthOfN, Explicit };

struct ScenarioSpec {
  int id = 0;  // 1..10 for the standard designs, 0 for custom
  SusceptibleLaw susceptible = ExponentialLaw{};
  CensoringLaw censoring = UniformLaw{0.0, 3.0};
  double p = 0.9;
  std::size_t n = 5000;
  KRule k_rule = KRule::NMinusOne;
  std::size_t k_explicit = 0;
  std::optional<double> lambda;  // default k/n
  std::size_t reps = 500;
  std::uint64_t seed = 1;
  int p_grid_resolution = 400;
  double refine_tolerance = 1e-12;

  void validate() const;  // throws Error(InvalidSpec)
  std::size_t resolved_k() const;
  double resolved_lambda() const;
  FitConfig fit_config() const;
};

// The ten standard designs: exponential (1-2), standard log-normal (3-4),
// Weibull a=0.5 (5-6), Pareto gamma=0.5 (7-8), Burr c=d=1.5 (9-10).
ScenarioSpec standard_scenario(int id, std::size_t n, double p, std::size_t reps, std::uint64_t seed);

// Independent uniform stream for (seed, stream index). The engine state comes
// from a splitmix64-hashed seed_seq, so streams do not depend on scheduling.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);
  double uniform();  // open interval (0,1), 53-bit resolution

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Deterministic in (spec.seed, rep_index). Cured subjects have T = +inf and are
// always censored at C.
SurvivalSample sample_scenario(const ScenarioSpec& spec, std::size_t rep_index);

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double rmse = 0.0;
  double mean_bias = 0.0;
};

struct RepFailure {
  std::size_t rep = 0;
  std::string message;
};

struct ReplicationSummary {
  Estimator estimator = Estimator::Benchmark;
  std::vector<std::size_t> reps;  // successful replications, ascending
  std::vector<double> estimates;
  std::vector<double> squared_errors;
  std::vector<double> biases;     // estimate - true p
  std::vector<RepFailure> failures;
  SummaryStats summary;
};

// Linear-interpolation sample quantile (R type 7) of unsorted data.
double sample_quantile(std::vector<double> values, double prob);

ReplicationSummary summarize(Estimator estimator, double true_p, std::vector<std::size_t> reps,
                             std::vector<double> estimates, std::vector<RepFailure> failures);

// Per-replication outcome, one slot per estimator (NaN + message on failure).
struct RepOutcome {
  std::vector<double> estimates;
  std::vector<std::string> errors;
};

RepOutcome run_replication(const ScenarioSpec& spec, const std::vector<Estimator>& estimators,
                           std::size_t rep_index, bool parallel_scan);

// Replications run on an OpenMP team; each writes its own slot and the
// reduction walks rep order, so results equal run_scenario_serial bit for bit.
// The p_n benchmark is appended when absent.
std::vector<ReplicationSummary> run_scenario(const ScenarioSpec& spec, std::vector<Estimator> estimators);
std::vector<ReplicationSummary> run_scenario_serial(const ScenarioSpec& spec,
                                                    std::vector<Estimator> estimators);

}  // namespace curetail
