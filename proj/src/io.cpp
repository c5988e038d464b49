#include "curetail/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>

#include "curetail/error.hpp"

namespace curetail {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

}  // namespace

SurvivalSample parse_dataset(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  SurvivalSample sample;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (!have_header) {
      const auto comma = text.find(',');
      if (comma == std::string_view::npos || trim(text.substr(0, comma)) != "time" ||
          trim(text.substr(comma + 1)) != "status") {
        throw Error(ErrorCode::MissingHeader, at_line(line) + "expected header 'time,status'");
      }
      have_header = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::MalformedRow, at_line(line) + "expected exactly two columns");
    }
    const std::string_view time_text = trim(text.substr(0, comma));
    const std::string_view status_text = trim(text.substr(comma + 1));
    double time = 0.0;
    const auto [tp, tec] = std::from_chars(time_text.data(), time_text.data() + time_text.size(), time);
    if (time_text.empty() || tec != std::errc() || tp != time_text.data() + time_text.size()) {
      throw Error(ErrorCode::MalformedRow, at_line(line) + "time '" + std::string(time_text) + "' is not numeric");
    }
    if (!std::isfinite(time) || time < 0.0) {
      throw Error(ErrorCode::MalformedRow, at_line(line) + "time must be finite and non-negative");
    }
    if (status_text != "0" && status_text != "1") {
      throw Error(ErrorCode::InvalidStatus, at_line(line) + "status '" + std::string(status_text) + "' is not 0 or 1");
    }
    sample.times.push_back(time);
    sample.events.push_back(status_text == "1" ? 1 : 0);
  }
  if (!have_header) throw Error(ErrorCode::MissingHeader, "empty input, expected header 'time,status'");
  if (sample.times.empty()) throw Error(ErrorCode::EmptySample, "no data rows after the header");
  return sample;
}

SurvivalSample read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_dataset(in);
}

void write_dataset(std::ostream& out, const SurvivalSample& sample) {
  out << "time,status\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out << format_number(sample.times[i], 17) << ',' << sample.events[i] << '\n';
  }
}

std::string csv_number(double value) { return format_number(value, 9); }

void write_series_csv(std::ostream& out, const PlotSeries& series) {
  std::vector<std::size_t> idx(series.x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return series.x[a] < series.x[b]; });
  out << "x,y\n";
  for (std::size_t i : idx) out << csv_number(series.x[i]) << ',' << csv_number(series.y[i]) << '\n';
}

void write_replications_csv(std::ostream& out, const std::vector<ReplicationSummary>& summaries) {
  struct Row {
    std::size_t rep;
    std::size_t order;
    std::string line;
  };
  std::vector<Row> rows;
  for (std::size_t s = 0; s < summaries.size(); ++s) {
    const auto& sum = summaries[s];
    const std::string est(label(sum.estimator));
    for (std::size_t i = 0; i < sum.reps.size(); ++i) {
      rows.push_back({sum.reps[i], s,
                      std::to_string(sum.reps[i]) + ',' + est + ',' + csv_number(sum.estimates[i]) + ',' +
                          csv_number(sum.squared_errors[i]) + ',' + csv_number(sum.biases[i])});
    }
    for (const auto& f : sum.failures) {
      rows.push_back({f.rep, s, std::to_string(f.rep) + ',' + est + ",nan,nan,nan"});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.rep != b.rep ? a.rep < b.rep : a.order < b.order;
  });
  out << "rep,estimator,p_hat,sq_error,bias\n";
  for (const auto& r : rows) out << r.line << '\n';
}

nlohmann::json to_json(const CureFit& fit, std::size_t n, double lambda) {
  return {{"model", std::string(to_string(fit.model))},
          {"n", n},
          {"k", fit.k_used},
          {"lambda", lambda},
          {"p_n", fit.p_n},
          {"p_hat", fit.p_hat},
          {"slope_hat", fit.slope_hat},
          {"loss", fit.loss},
          {"skipped_terms", fit.skipped_terms},
          {"feasible_lower", fit.feasible_lower}};
}

nlohmann::json to_json(const PotFit& fit, std::size_t n, double lambda) {
  return {{"model", std::string(to_string(fit.domain))},
          {"n", n},
          {"k", fit.k_used},
          {"lambda", lambda},
          {"p_n", fit.p_n},
          {"p_k", fit.p_k},
          {"pi_hat", fit.pi_hat},
          {"scale_hat", fit.scale_hat},
          {"p_hat", fit.p_hat},
          {"loss", fit.loss},
          {"clipped", fit.clipped}};
}

nlohmann::json sigma2k_json(const CensoringTail& tail, double value) {
  return {{"gamma_c", tail.gamma_c}, {"k", tail.k}, {"sigma2_k", value}};
}

nlohmann::json summary_json(const ScenarioSpec& spec, const std::vector<ReplicationSummary>& summaries) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : summaries) {
    rows.push_back({{"estimator", std::string(label(s.estimator))},
                    {"n_ok", s.estimates.size()},
                    {"n_failed", s.failures.size()},
                    {"mean", s.summary.mean},
                    {"median", s.summary.median},
                    {"q25", s.summary.q25},
                    {"q75", s.summary.q75},
                    {"rmse", s.summary.rmse},
                    {"mean_bias", s.summary.mean_bias}});
  }
  return {{"scenario", spec.id},
          {"susceptible", describe(spec.susceptible)},
          {"censoring", describe(spec.censoring)},
          {"p", spec.p},
          {"n", spec.n},
          {"k", spec.resolved_k()},
          {"lambda", spec.resolved_lambda()},
          {"reps", spec.reps},
          {"seed", spec.seed},
          {"estimators", rows}};
}

std::vector<StressRow> stress_sweep(const SurvivalSample& sample, std::span<const double> fractions,
                                    Estimator estimator, const FitConfig& config) {
  validate(sample);
  const std::size_t n = sample.size();
  if (fractions.empty()) throw Error(ErrorCode::InvalidFraction, "no stress fractions given");
  const double max_fraction = *std::max_element(fractions.begin(), fractions.end());
  const double k_fraction = static_cast<double>(config.k) / static_cast<double>(n);
  if (!(k_fraction > max_fraction)) {
    throw Error(ErrorCode::KTooSmallForStress, "k/n=" + std::to_string(k_fraction) +
                                                   " must exceed the largest stress fraction " +
                                                   std::to_string(max_fraction));
  }
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= kMaxStressFraction)) {
      throw Error(ErrorCode::InvalidFraction, "stress fractions must lie in [0, 0.45]");
    }
  }
  config.validate(n);

  std::vector<StressRow> rows;
  rows.reserve(fractions.size());
  for (double f : fractions) {
    StressRow row;
    row.fraction = f;
    row.zeroed = insufficiency_count(n, f);
    const SurvivalSample modified = apply_insufficiency(sample, f);
    const OrderedSample ordered = order_sample(modified);
    const KaplanMeierCurve curve = km_fit(ordered);
    row.p_n = p_benchmark(curve, ordered);
    try {
      row.p_hat = estimate(estimator, ordered, curve, config).p_hat;
    } catch (const Error& e) {
      row.p_hat = std::nan("");
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_stress_csv(std::ostream& out, const std::vector<StressRow>& rows) {
  out << "fraction,p_hat,p_n\n";
  for (const auto& r : rows) out << csv_number(r.fraction) << ',' << csv_number(r.p_hat) << ',' << csv_number(r.p_n) << '\n';
}

}  // namespace curetail
