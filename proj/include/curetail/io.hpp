#pragma once

// Dataset ingestion, result serialisation and the follow-up stress sweep.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "curetail/asymptotics.hpp"
#include "curetail/estimators.hpp"
#include "curetail/simulation.hpp"
#include "curetail/survival.hpp"

namespace curetail {

// CSV with header `time,status`; status 1 = event, 0 = censored. Any malformed
// row is an error naming its line; nothing is skipped except blank lines.
SurvivalSample parse_dataset(std::istream& in);
SurvivalSample read_dataset(const std::string& path);

// Writes `time,status` with 17 significant digits so parse_dataset reproduces
// the sample exactly.
void write_dataset(std::ostream& out, const SurvivalSample& sample);

// 9 significant digits, used for plot and per-replication CSV output.
std::string csv_number(double value);

void write_series_csv(std::ostream& out, const PlotSeries& series);
void write_replications_csv(std::ostream& out, const std::vector<ReplicationSummary>& summaries);

nlohmann::json to_json(const CureFit& fit, std::size_t n, double lambda);
nlohmann::json to_json(const PotFit& fit, std::size_t n, double lambda);
nlohmann::json sigma2k_json(const CensoringTail& tail, double value);
nlohmann::json summary_json(const ScenarioSpec& spec, const std::vector<ReplicationSummary>& summaries);

struct StressRow {
  double fraction = 0.0;
  std::size_t zeroed = 0;
  double p_hat = 0.0;  // NaN when the fit failed
  double p_n = 0.0;
  std::string error;
};

// For each fraction: clear the top indicators, refit and report (p_hat, p_n).
// Fractions must lie in [0, 0.45] and stay strictly below k/n, otherwise
// Error(KTooSmallForStress) / Error(InvalidFraction).
std::vector<StressRow> stress_sweep(const SurvivalSample& sample, std::span<const double> fractions,
                                    Estimator estimator, const FitConfig& config);

void write_stress_csv(std::ostream& out, const std::vector<StressRow>& rows);

inline constexpr double kMaxStressFraction = 0.45;

}  // namespace curetail
