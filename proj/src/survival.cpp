#include "curetail/survival.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "curetail/error.hpp"

namespace curetail {

void validate(const SurvivalSample& sample) {
  if (sample.times.size() != sample.events.size()) {
    throw Error(ErrorCode::InvalidSample, "times and events differ in length (" +
                                              std::to_string(sample.times.size()) + " vs " +
                                              std::to_string(sample.events.size()) + ")");
  }
  if (sample.times.empty()) throw Error(ErrorCode::EmptySample, "sample has no observations");
  for (std::size_t i = 0; i < sample.times.size(); ++i) {
    const double t = sample.times[i];
    if (!std::isfinite(t) || t < 0.0) {
      throw Error(ErrorCode::InvalidSample,
                  "time at index " + std::to_string(i) + " is not a finite non-negative value");
    }
    if (sample.events[i] != 0 && sample.events[i] != 1) {
      throw Error(ErrorCode::InvalidSample, "event at index " + std::to_string(i) + " is not 0/1");
    }
  }
}

SurvivalSample make_sample(std::vector<double> times, std::vector<int> events) {
  SurvivalSample s{std::move(times), std::move(events)};
  validate(s);
  return s;
}

OrderedSample order_sample(const SurvivalSample& sample) {
  validate(sample);
  const std::size_t n = sample.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // events (1) before censorings (0) at tied times
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (sample.times[a] != sample.times[b]) return sample.times[a] < sample.times[b];
    return sample.events[a] > sample.events[b];
  });
  OrderedSample out;
  out.sorted_times.reserve(n);
  out.concomitant_events.reserve(n);
  for (std::size_t i : idx) {
    out.sorted_times.push_back(sample.times[i]);
    out.concomitant_events.push_back(sample.events[i]);
  }
  return out;
}

KaplanMeierCurve km_fit(const OrderedSample& ordered) {
  const std::size_t n = ordered.size();
  if (n == 0) throw Error(ErrorCode::EmptySample, "sample has no observations");
  KaplanMeierCurve curve;
  double survival = 1.0;
  std::size_t i = 0;
  while (i < n) {
    const double t = ordered.sorted_times[i];
    const std::size_t at_risk = n - i;
    std::size_t events = 0;
    std::size_t j = i;
    for (; j < n && ordered.sorted_times[j] == t; ++j) events += ordered.concomitant_events[j];
    if (events > 0) {
      survival *= 1.0 - static_cast<double>(events) / static_cast<double>(at_risk);
      curve.jump_times.push_back(t);
      curve.cdf_values.push_back(1.0 - survival);
      curve.n_at_risk.push_back(at_risk);
      curve.n_events.push_back(events);
    }
    i = j;
  }
  return curve;
}

KaplanMeierCurve km_fit(const SurvivalSample& sample) { return km_fit(order_sample(sample)); }

double KaplanMeierCurve::operator()(double t) const {
  const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  if (it == jump_times.begin()) return 0.0;
  return cdf_values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

double km_eval(const KaplanMeierCurve& curve, double t) { return curve(t); }

SurvivalSample exceedances(const OrderedSample& ordered, std::size_t k, bool log_scale) {
  const std::size_t n = ordered.size();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidK, "k=" + std::to_string(k) + " must satisfy 1 <= k <= n-1 (n=" +
                                         std::to_string(n) + ")");
  }
  const double threshold = ordered.threshold(k);
  if (log_scale && !(threshold > 0.0)) {
    throw Error(ErrorCode::NonPositiveThreshold, "log exceedances need Z_{n-k,n} > 0");
  }
  SurvivalSample out;
  out.times.reserve(k);
  out.events.reserve(k);
  for (std::size_t j = k; j >= 1; --j) {
    const double z = ordered.top(j);
    out.times.push_back(log_scale ? std::log(z / threshold) : z - threshold);
    out.events.push_back(ordered.top_event(j));
  }
  return out;
}

std::size_t insufficiency_count(std::size_t n, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::InvalidFraction, "fraction must lie in [0, 1)");
  }
  // 0.45 * 100 evaluates to 45.000000000000007; absorb the representation error
  const double scaled = fraction * static_cast<double>(n);
  const auto count = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
  return std::min(count, n);
}

SurvivalSample apply_insufficiency(const SurvivalSample& sample, double fraction) {
  validate(sample);
  const std::size_t count = insufficiency_count(sample.size(), fraction);
  SurvivalSample out = sample;
  if (count == 0) return out;
  std::vector<std::size_t> idx(sample.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return sample.times[a] < sample.times[b]; });
  for (std::size_t r = idx.size() - count; r < idx.size(); ++r) out.events[idx[r]] = 0;
  return out;
}

}  // namespace curetail
