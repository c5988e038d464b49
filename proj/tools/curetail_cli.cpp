// curetail: command-line front end.
//
//   curetail fit      --input data.csv --model pareto --k 0.5 --lambda kn
//   curetail gof      --input data.csv --model gumbel-pot --k 0.5
//   curetail simulate --scenario 2 --n 2000 --reps 200 --p 0.9 --seed 7
//   curetail stress   --input data.csv --model gumbel-pot --k 0.5
//   curetail diag sigma2k --gamma-c -1 --k 10
//
// Exit codes: 0 success, 2 input validation error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "curetail/asymptotics.hpp"
#include "curetail/error.hpp"
#include "curetail/estimators.hpp"
#include "curetail/fit_config.hpp"
#include "curetail/io.hpp"
#include "curetail/simulation.hpp"

namespace {

using namespace curetail;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct FitOptions {
  std::string input;
  std::string model = "gumbel-pot";
  std::string k = "0.5";
  std::string lambda = "kn";
  int grid = 400;
  double tolerance = 1e-12;
};

void add_fit_options(CLI::App* cmd, FitOptions& o) {
  cmd->add_option("--input", o.input, "CSV with header time,status")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", o.model, "pareto|weibull|lognormal|gumbel-pot|frechet-pot")
      ->check(CLI::IsMember({"pareto", "weibull", "lognormal", "gumbel-pot", "frechet-pot"}));
  cmd->add_option("--k", o.k, "top order statistics: a count, or a fraction of n in (0,1)");
  cmd->add_option("--lambda", o.lambda, "penalty weight, or 'kn' for k/n");
  cmd->add_option("--grid", o.grid, "p grid resolution")->check(CLI::Range(10, 1000000));
  cmd->add_option("--tol", o.tolerance, "refinement tolerance on p");
}

struct Prepared {
  SurvivalSample sample;
  OrderedSample ordered;
  KaplanMeierCurve curve;
  FitConfig config;
  Estimator estimator;
};

Prepared prepare(const FitOptions& o) {
  Prepared p;
  p.sample = read_dataset(o.input);
  p.ordered = order_sample(p.sample);
  p.curve = km_fit(p.ordered);
  const std::size_t n = p.sample.size();
  p.config.k = parse_k(o.k, n);
  p.config.lambda = parse_lambda(o.lambda, p.config.k, n);
  p.config.p_grid_resolution = o.grid;
  p.config.refine_tolerance = o.tolerance;
  p.config.validate(n);
  p.estimator = *parse_estimator(o.model);
  return p;
}

std::optional<PlottingModel> plotting_model(Estimator e) {
  switch (e) {
    case Estimator::Pareto: return PlottingModel::Pareto;
    case Estimator::Weibull: return PlottingModel::Weibull;
    case Estimator::LogNormal: return PlottingModel::LogNormal;
    default: return std::nullopt;
  }
}

PotDomain pot_domain(Estimator e) { return e == Estimator::Gumbel ? PotDomain::Gumbel : PotDomain::Frechet; }

int run_fit(const FitOptions& o) {
  const Prepared p = prepare(o);
  const std::size_t n = p.sample.size();
  if (auto model = plotting_model(p.estimator)) {
    const CureFit fit = pp_fit(*model, p.ordered, p.curve, p.config);
    std::cout << to_json(fit, n, p.config.lambda).dump() << '\n';
  } else {
    const PotFit fit = pot_fit(p.ordered, p.curve, pot_domain(p.estimator), p.config);
    std::cout << to_json(fit, n, p.config.lambda).dump() << '\n';
  }
  return 0;
}

int run_gof(const FitOptions& o, std::optional<double> p_hat, const std::string& output) {
  const Prepared p = prepare(o);
  PlotSeries series;
  if (auto model = plotting_model(p.estimator)) {
    const double at = p_hat ? *p_hat : pp_fit(*model, p.ordered, p.curve, p.config).p_hat;
    series = gof_series(*model, p.ordered, p.curve, p.config.k, at);
  } else {
    if (p_hat) throw Error(ErrorCode::InvalidConfig, "--p-hat applies to probability-plot models only");
    const PotFit fit = pot_fit(p.ordered, p.curve, pot_domain(p.estimator), p.config);
    series = pot_gof_series(p.ordered, p.curve, pot_domain(p.estimator), p.config.k, fit.pi_hat, fit.scale_hat);
  }
  if (output.empty()) {
    write_series_csv(std::cout, series);
  } else {
    std::ofstream out(output);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + output + "'");
    write_series_csv(out, series);
  }
  return 0;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct SimulateOptions {
  int scenario = 1;
  std::size_t n = 5000;
  std::size_t reps = 500;
  double p = 0.9;
  std::uint64_t seed = 1;
  std::string estimators = "g,f,p,w,l,pn";
  std::string k;
  std::string lambda = "kn";
  int grid = 400;
  std::string csv_path;
  std::string summary_path;
  std::string dump_sample;
};

int run_simulate(const SimulateOptions& o) {
  ScenarioSpec spec = standard_scenario(o.scenario, o.n, o.p, o.reps, o.seed);
  spec.p_grid_resolution = o.grid;
  if (!o.k.empty()) {
    spec.k_rule = KRule::Explicit;
    spec.k_explicit = parse_k(o.k, o.n);
  }
  if (o.lambda != "kn" && o.lambda != "k/n") spec.lambda = parse_lambda(o.lambda, spec.resolved_k(), o.n);
  spec.validate();

  std::vector<Estimator> estimators;
  for (const auto& token : split(o.estimators, ',')) {
    auto e = parse_estimator(token);
    if (!e) throw Error(ErrorCode::InvalidConfig, "unknown estimator '" + token + "'");
    estimators.push_back(*e);
  }

  if (!o.dump_sample.empty()) {
    std::ofstream out(o.dump_sample);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + o.dump_sample + "'");
    write_dataset(out, sample_scenario(spec, 0));
  }

  const auto summaries = run_scenario(spec, estimators);
  const std::string summary = summary_json(spec, summaries).dump(2);
  if (o.csv_path.empty()) {
    write_replications_csv(std::cout, summaries);
  } else {
    std::ofstream out(o.csv_path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + o.csv_path + "'");
    write_replications_csv(out, summaries);
  }
  if (o.summary_path.empty()) {
    std::cout << summary << '\n';
  } else {
    std::ofstream out(o.summary_path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + o.summary_path + "'");
    out << summary << '\n';
  }
  return 0;
}

int run_stress(const FitOptions& o, const std::string& fraction_list) {
  const Prepared p = prepare(o);
  std::vector<double> fractions;
  for (const auto& token : split(fraction_list, ',')) {
    try {
      std::size_t used = 0;
      fractions.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidFraction, "cannot parse fraction '" + token + "'");
    }
  }
  write_stress_csv(std::cout, stress_sweep(p.sample, fractions, p.estimator, p.config));
  return 0;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("CURETAIL_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Cure-rate estimation through extreme-value tail fits of censored survival data"};
  app.require_subcommand(1);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "fit one estimator and print a JSON object");
  add_fit_options(fit_cmd, fit_opts);

  FitOptions gof_opts;
  std::optional<double> gof_p_hat;
  std::string gof_output;
  auto* gof_cmd = app.add_subcommand("gof", "goodness-of-fit plot series as CSV x,y (ascending x)");
  add_fit_options(gof_cmd, gof_opts);
  gof_cmd->add_option("--p-hat", gof_p_hat, "evaluate the plot at this p instead of the fitted one");
  gof_cmd->add_option("--output", gof_output, "write the CSV here instead of stdout");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "replicated comparison on a standard scenario");
  sim_cmd->add_option("--scenario", sim.scenario, "scenario id 1..10")->required()->check(CLI::Range(1, 10));
  sim_cmd->add_option("--n", sim.n, "sample size")->check(CLI::Range(std::size_t{10}, std::size_t{100000000}));
  sim_cmd->add_option("--reps", sim.reps, "number of replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--p", sim.p, "susceptible proportion p")->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--seed", sim.seed, "base seed");
  sim_cmd->add_option("--estimators", sim.estimators, "comma list from g,f,p,w,l,pn");
  sim_cmd->add_option("--k", sim.k, "override the scenario's k (count or fraction)");
  sim_cmd->add_option("--lambda", sim.lambda, "penalty weight, or 'kn'");
  sim_cmd->add_option("--grid", sim.grid, "p grid resolution")->check(CLI::Range(10, 1000000));
  sim_cmd->add_option("--csv", sim.csv_path, "per-replication CSV path (default stdout)");
  sim_cmd->add_option("--summary", sim.summary_path, "summary JSON path (default stdout)");
  sim_cmd->add_option("--dump-sample", sim.dump_sample, "also write replication 0 as a time,status CSV");

  FitOptions stress_opts;
  std::string stress_fractions = "0,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45";
  auto* stress_cmd = app.add_subcommand("stress", "follow-up stress sweep: clear top indicators and refit");
  add_fit_options(stress_cmd, stress_opts);
  stress_cmd->add_option("--fractions", stress_fractions, "comma list of fractions in [0, 0.45]");

  auto* diag_cmd = app.add_subcommand("diag", "asymptotic diagnostics");
  diag_cmd->require_subcommand(1);
  CensoringTail tail;
  auto* sigma_cmd = diag_cmd->add_subcommand("sigma2k", "variance factor sigma_k^2 as JSON");
  sigma_cmd->add_option("--gamma-c", tail.gamma_c, "censoring extreme value index (< 0)")->required();
  sigma_cmd->add_option("--k", tail.k, "number of top order statistics")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*fit_cmd) return run_fit(fit_opts);
    if (*gof_cmd) return run_gof(gof_opts, gof_p_hat, gof_output);
    if (*sim_cmd) return run_simulate(sim);
    if (*stress_cmd) return run_stress(stress_opts, stress_fractions);
    if (*sigma_cmd) {
      tail.n = tail.k + 1;
      const double value = sigma2_k(tail);
      std::cout << sigma2k_json(tail, value).dump() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}
