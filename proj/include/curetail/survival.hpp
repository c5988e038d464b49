#pragma once

// Right-censored survival data: ordering, the product-limit (Kaplan-Meier)
// estimator, tail exceedances and the follow-up stress modification.

#include <cstddef>
#include <vector>

namespace curetail {

// Paired observation times Z_i = min(T_i, C_i) and indicators delta_i = 1{T_i <= C_i}.
struct SurvivalSample {
  std::vector<double> times;
  std::vector<int> events;

  std::size_t size() const noexcept { return times.size(); }
};

// Throws Error(EmptySample) or Error(InvalidSample).
void validate(const SurvivalSample& sample);

// Validating constructor.
SurvivalSample make_sample(std::vector<double> times, std::vector<int> events);

// Order statistics Z_{1,n} <= ... <= Z_{n,n} with concomitant indicators.
// Ties are ordered events first, then censorings.
struct OrderedSample {
  std::vector<double> sorted_times;
  std::vector<int> concomitant_events;

  std::size_t size() const noexcept { return sorted_times.size(); }

  // Z_{n-j+1,n}, the j-th largest observation (j is 1-based).
  double top(std::size_t j) const { return sorted_times[size() - j]; }
  int top_event(std::size_t j) const { return concomitant_events[size() - j]; }
  // Z_{n-k,n}; k must be < n.
  double threshold(std::size_t k) const { return sorted_times[size() - k - 1]; }
};

OrderedSample order_sample(const SurvivalSample& sample);

// Right-continuous step function F^(t) = 1 - prod_{t_i <= t} (1 - d_i / n_i).
struct KaplanMeierCurve {
  std::vector<double> jump_times;        // distinct event times, strictly increasing
  std::vector<double> cdf_values;        // F^ right after each jump
  std::vector<std::size_t> n_at_risk;    // risk set size at each jump
  std::vector<std::size_t> n_events;     // tied event count at each jump

  double operator()(double t) const;
  // F^ at the largest jump, or 0 when there are no events.
  double last_value() const noexcept { return cdf_values.empty() ? 0.0 : cdf_values.back(); }
};

KaplanMeierCurve km_fit(const SurvivalSample& sample);
KaplanMeierCurve km_fit(const OrderedSample& ordered);

double km_eval(const KaplanMeierCurve& curve, double t);

// The k top exceedances over Z_{n-k,n}, in ascending order, each carrying the
// indicator of its originating order statistic. Raw: Z_{n-j+1,n} - Z_{n-k,n};
// log scale: log(Z_{n-j+1,n} / Z_{n-k,n}).
SurvivalSample exceedances(const OrderedSample& ordered, std::size_t k, bool log_scale);

// Number of top observations whose indicator is cleared for a stress fraction.
std::size_t insufficiency_count(std::size_t n, double fraction);

// Sets the indicators of the top ceil(fraction * n) observations (by time,
// ties broken by original position) to 0. fraction must lie in [0, 1).
SurvivalSample apply_insufficiency(const SurvivalSample& sample, double fraction);

}  // namespace curetail
