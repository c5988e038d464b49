#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "curetail/error.hpp"
#include "curetail/fit_config.hpp"
#include "curetail/pp_estimators.hpp"
#include "curetail/profile_search.hpp"
#include "curetail/simulation.hpp"
#include "oracles.hpp"

using namespace curetail;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const PlottingModel kModels[] = {PlottingModel::Pareto, PlottingModel::Weibull, PlottingModel::LogNormal};

oracle::Family family_of(PlottingModel m) {
  switch (m) {
    case PlottingModel::Pareto: return oracle::Family::Pareto;
    case PlottingModel::Weibull: return oracle::Family::Weibull;
    case PlottingModel::LogNormal: return oracle::Family::LogNormal;
  }
  return oracle::Family::Pareto;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected curetail::Error");
  return ErrorCode::Io;
}

// Pareto(gamma) quantile grid with p = 1: F^(Z_(i)) = i/n for i < n.
SurvivalSample pareto_grid(std::size_t n, double gamma) {
  std::vector<double> z;
  for (std::size_t i = 1; i < n; ++i) z.push_back(std::pow(1.0 - static_cast<double>(i) / n, -gamma));
  z.push_back(2.0 * z.back());
  return make_sample(z, std::vector<int>(n, 1));
}

SurvivalSample heavy_sample(std::size_t n, std::uint64_t seed) {
  return sample_scenario(standard_scenario(8, n, 0.85, 1, seed), 0);
}

struct Fitted {
  OrderedSample ordered;
  KaplanMeierCurve curve;
};

Fitted prepare(const SurvivalSample& s) {
  Fitted f{order_sample(s), {}};
  f.curve = km_fit(f.ordered);
  return f;
}

}  // namespace

TEST_CASE("p_benchmark is the KM value at the largest observation", "[pp]") {
  const auto f = prepare(make_sample({1, 2, 3, 4}, {1, 0, 1, 0}));
  CHECK_THAT(p_benchmark(f.curve, f.ordered), WithinAbs(1.0 - 0.75 * 0.5, 1e-15));
}

TEST_CASE("pp_loss agrees with the independent loss oracle", "[pp][oracle]") {
  const auto s = heavy_sample(300, 5);
  const auto f = prepare(s);
  const std::size_t k = 60;
  for (auto m : kModels) {
    const oracle::PlotLoss o(family_of(m), s.times, s.events, k);
    const PlotRegression reg(m, f.ordered, f.curve, k);
    CHECK(reg.feasible_lower() == o.lower);
    for (double t : {0.001, 0.1, 0.5, 0.9, 1.0}) {
      const double p = o.lower + t * (1.0 - o.lower);
      for (double beta : {-1.0, 0.5, 2.0, 7.0}) {
        const double lambda = 0.3;
        const LossValue v = pp_loss(m, f.ordered, f.curve, k, beta, p, lambda, o.p_n);
        CHECK_THAT(v.loss, WithinRel(o.loss(beta, p, lambda), 1e-11));
      }
    }
  }
}

TEST_CASE("profiled slope minimises the loss in beta", "[pp][property]") {
  const auto s = heavy_sample(400, 9);
  const auto f = prepare(s);
  for (auto m : kModels) {
    const PlotRegression reg(m, f.ordered, f.curve, 80);
    const double p_n = p_benchmark(f.curve, f.ordered);
    const double p = 0.5 * (reg.feasible_lower() + 1.0);
    const auto prof = reg.profile(p, 0.2, p_n);
    CHECK_THAT(prof.loss, WithinRel(reg.loss(prof.beta, p, 0.2, p_n).loss, 1e-12));
    for (double db : {-1e-3, 1e-3}) CHECK(reg.loss(prof.beta + db, p, 0.2, p_n).loss > prof.loss);
    const oracle::PlotLoss o(family_of(m), s.times, s.events, 80);
    CHECK_THAT(prof.beta, WithinRel(o.profiled(p, 0.2).first, 1e-8));
  }
}

TEST_CASE("profile derivative matches central differences", "[pp]") {
  const auto f = prepare(heavy_sample(400, 12));
  for (auto m : kModels) {
    const PlotRegression reg(m, f.ordered, f.curve, 80);
    const double p_n = p_benchmark(f.curve, f.ordered);
    for (double t : {0.2, 0.5, 0.8}) {
      const double p = reg.feasible_lower() + t * (1.0 - reg.feasible_lower());
      const double h = 1e-6;
      const double fd = (reg.profile(p + h, 0.1, p_n).loss - reg.profile(p - h, 0.1, p_n).loss) / (2.0 * h);
      CHECK_THAT(reg.profile(p, 0.1, p_n).derivative, WithinRel(fd, 1e-5) || WithinAbs(fd, 1e-6));
    }
  }
}

TEST_CASE("loss rejects p outside the admissible interval", "[pp][errors]") {
  const auto f = prepare(heavy_sample(200, 1));
  const PlotRegression reg(PlottingModel::Pareto, f.ordered, f.curve, 40);
  CHECK(code_of([&] { reg.loss(1.0, reg.feasible_lower(), 0.0, 0.9); }) == ErrorCode::InfeasibleP);
  CHECK(code_of([&] { reg.loss(1.0, 1.0 + 1e-9, 0.0, 0.9); }) == ErrorCode::InfeasibleP);
  CHECK_NOTHROW(reg.loss(1.0, 1.0, 0.0, 0.9));
}

TEST_CASE("exact Pareto grid is recovered", "[pp]") {
  const auto f = prepare(pareto_grid(200, 0.5));
  FitConfig config = make_config(199, 200);
  config.lambda = 0.0;
  const CureFit fit = pp_fit(PlottingModel::Pareto, f.ordered, f.curve, config);
  CHECK(fit.boundary_p);
  CHECK(fit.p_hat == 1.0);
  CHECK_THAT(fit.slope_hat, WithinAbs(2.0, 1e-10));
  CHECK(fit.loss < 1e-20);
  CHECK(fit.skipped_terms == 1);

  // -log(1 - F^) = 2 log Z on this grid
  const PlotSeries series = gof_series(PlottingModel::Pareto, f.ordered, f.curve, 199, 1.0);
  CHECK(series.dropped == 1);
  REQUIRE(series.x.size() == 198);
  for (std::size_t i = 0; i < series.x.size(); ++i) CHECK_THAT(series.y[i], WithinAbs(2.0 * series.x[i], 1e-11));
}

TEST_CASE("gof series is ascending and respects the bound", "[pp]") {
  const auto f = prepare(heavy_sample(300, 2));
  for (auto m : kModels) {
    const PlotRegression reg(m, f.ordered, f.curve, 60);
    const PlotSeries at_bound = gof_series(m, f.ordered, f.curve, 60, reg.feasible_lower());
    CHECK(at_bound.dropped >= 1);
    CHECK(at_bound.x.size() + at_bound.dropped == 60);
    CHECK(std::is_sorted(at_bound.x.begin(), at_bound.x.end()));
    const PlotSeries interior = gof_series(m, f.ordered, f.curve, 60, 0.5 * (reg.feasible_lower() + 1.0));
    CHECK(interior.dropped == 0);
    CHECK(code_of([&] { gof_series(m, f.ordered, f.curve, 60, reg.feasible_lower() - 1e-6); }) == ErrorCode::InfeasibleP);
  }
}

TEST_CASE("pp_fit input errors", "[pp][errors]") {
  // the top k+1 observations coincide
  const auto tied = prepare(make_sample({1, 2, 3, 5, 5, 5, 5}, {1, 1, 0, 1, 0, 1, 0}));
  CHECK(code_of([&] { pp_fit(PlottingModel::Pareto, tied.ordered, tied.curve, make_config(3, 7)); }) ==
        ErrorCode::DegenerateRegressor);
  // F^ vanishes at Z_{n-k,n}: log(-log t) and Phi^{-1} diverge there
  const auto censored_first = prepare(make_sample({1, 2, 3, 4, 5}, {0, 1, 1, 0, 1}));
  CHECK(code_of([&] { pp_fit(PlottingModel::Weibull, censored_first.ordered, censored_first.curve, make_config(4, 5)); }) ==
        ErrorCode::TransformDomain);
  CHECK(code_of([&] { pp_fit(PlottingModel::LogNormal, censored_first.ordered, censored_first.curve, make_config(4, 5)); }) ==
        ErrorCode::TransformDomain);
  CHECK_NOTHROW(pp_fit(PlottingModel::Pareto, censored_first.ordered, censored_first.curve, make_config(4, 5)));
  const auto zero = prepare(make_sample({0, 0, 1, 2, 3}, {1, 1, 1, 0, 1}));
  CHECK(code_of([&] { pp_fit(PlottingModel::Pareto, zero.ordered, zero.curve, make_config(4, 5)); }) ==
        ErrorCode::NonPositiveThreshold);
  CHECK(code_of([&] { pp_fit(PlottingModel::Pareto, zero.ordered, zero.curve, make_config(5, 5)); }) == ErrorCode::InvalidK);
}

TEST_CASE("pp_fit reaches the oracle minimum", "[pp][oracle]") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = heavy_sample(250, 40 + seed);
    const auto f = prepare(s);
    for (auto m : kModels) {
      const CureFit fit = pp_fit(m, f.ordered, f.curve, make_config(50, 250));
      const oracle::PlotLoss o(family_of(m), s.times, s.events, 50);
      CHECK(fit.loss <= o.minimum(50.0 / 250.0, 2000) + 1e-9);
      CHECK(fit.p_hat > fit.feasible_lower);
      CHECK(fit.p_hat <= 1.0);
      CHECK(fit.feasible_lower == fit.p_n);
    }
  }
}

TEST_CASE("a heavier penalty moves p_hat towards p_n", "[pp][property]") {
  const auto f = prepare(heavy_sample(400, 21));
  for (auto m : kModels) {
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda : {0.0, 0.01, 0.1, 1.0, 10.0, 100.0}) {
      FitConfig config = make_config(80, 400);
      config.lambda = lambda;
      const CureFit fit = pp_fit(m, f.ordered, f.curve, config);
      const double gap = std::fabs(fit.p_hat - fit.p_n);
      CHECK(gap <= prev + 1e-9);
      prev = gap;
    }
  }
}

TEST_CASE("parallel and serial grid scans give identical fits", "[pp][parallel]") {
  const auto f = prepare(heavy_sample(500, 8));
  for (auto m : kModels) {
    FitConfig a = make_config(100, 500);
    FitConfig b = a;
    b.parallel_scan = false;
    const CureFit fa = pp_fit(m, f.ordered, f.curve, a);
    const CureFit fb = pp_fit(m, f.ordered, f.curve, b);
    CHECK(fa.p_hat == fb.p_hat);
    CHECK(fa.slope_hat == fb.slope_hat);
    CHECK(fa.loss == fb.loss);
  }
}

TEST_CASE("minimize_profile on a smooth convex function", "[search]") {
  const auto f = [](double x) { return (x - 0.3) * (x - 0.3) + 1.0; };
  const auto df = [](double x) { return 2.0 * (x - 0.3); };
  const ProfileMinimum m = minimize_profile(f, df, 0.0, 1.0, SearchOptions{});
  CHECK_THAT(m.x, WithinAbs(0.3, 1e-12));
  CHECK_THAT(m.value, WithinAbs(1.0, 1e-15));
  // the right endpoint is a valid minimiser
  const ProfileMinimum edge = minimize_profile([](double x) { return -x; }, [](double) { return -1.0; }, 0.0, 1.0, SearchOptions{});
  CHECK(edge.x == 1.0);
}

TEST_CASE("scan_serial and scan_parallel agree bit for bit", "[search][parallel]") {
  const std::vector<double> grid = open_grid(0.2, 1.0, 1000);
  CHECK(grid.front() > 0.2);
  CHECK(grid.back() == 1.0);
  std::vector<double> a(grid.size());
  std::vector<double> b(grid.size());
  const auto f = [](double x) { return std::sin(1.0 / x) * std::log(x); };
  scan_serial(grid, std::span<double>(a), f);
  scan_parallel(grid, std::span<double>(b), f);
  CHECK(a == b);
}
