#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "curetail/error.hpp"
#include "curetail/survival.hpp"
#include "oracles.hpp"

using namespace curetail;
using Catch::Matchers::WithinAbs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected curetail::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("km_fit on a small hand-worked sample", "[survival]") {
  // at risk 5,4,2 at the event times 1,2,3
  const auto s = make_sample({1, 2, 2, 3, 4}, {1, 1, 0, 1, 0});
  const auto curve = km_fit(s);
  REQUIRE(curve.jump_times == std::vector<double>{1, 2, 3});
  CHECK_THAT(curve.cdf_values[0], WithinAbs(0.2, 1e-15));
  CHECK_THAT(curve.cdf_values[1], WithinAbs(0.4, 1e-15));
  CHECK_THAT(curve.cdf_values[2], WithinAbs(0.7, 1e-15));
  CHECK(curve.n_at_risk == std::vector<std::size_t>{5, 4, 2});
  CHECK(curve.n_events == std::vector<std::size_t>{1, 1, 1});
  CHECK(curve.last_value() == curve.cdf_values[2]);
}

TEST_CASE("km curve is a right-continuous step function", "[survival]") {
  const auto curve = km_fit(make_sample({1, 2, 2, 3, 4}, {1, 1, 0, 1, 0}));
  CHECK(curve(0.5) == 0.0);
  CHECK(curve(1.0) == curve.cdf_values[0]);
  CHECK(curve(1.999) == curve.cdf_values[0]);
  CHECK(curve(2.0) == curve.cdf_values[1]);
  CHECK(curve(100.0) == curve.last_value());
  CHECK(km_eval(curve, 3.0) == curve.cdf_values[2]);
}

TEST_CASE("km with no events stays at zero", "[survival]") {
  const auto curve = km_fit(make_sample({1, 2, 3}, {0, 0, 0}));
  CHECK(curve.jump_times.empty());
  CHECK(curve(10.0) == 0.0);
  CHECK(curve.last_value() == 0.0);
}

TEST_CASE("km reaches one when the largest time is an event", "[survival]") {
  const auto curve = km_fit(make_sample({1, 2, 3}, {0, 1, 1}));
  CHECK_THAT(curve.last_value(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("km matches the brute-force product-limit oracle", "[survival][oracle]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(unif(rng) * 40);
    std::vector<double> z(n);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = std::round(10.0 * unif(rng)) / 2.0;
      d[i] = unif(rng) < 0.6;
    }
    const auto curve = km_fit(make_sample(z, d));
    REQUIRE(curve.jump_times == oracle::event_times(z, d));
    for (double t : z) CHECK_THAT(curve(t), WithinAbs(oracle::km(z, d, t), 1e-12));
  }
}

TEST_CASE("km is invariant to the order of the input rows", "[survival][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> z(30);
    std::vector<int> d(30);
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = std::round(20.0 * unif(rng));
      d[i] = unif(rng) < 0.5;
    }
    const auto base = km_fit(make_sample(z, d));
    std::vector<std::size_t> perm(z.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> z2;
    std::vector<int> d2;
    for (std::size_t i : perm) {
      z2.push_back(z[i]);
      d2.push_back(d[i]);
    }
    const auto shuffled = km_fit(make_sample(z2, d2));
    CHECK(shuffled.jump_times == base.jump_times);
    CHECK(shuffled.cdf_values == base.cdf_values);
  }
}

TEST_CASE("order_sample puts events before censorings at ties", "[survival]") {
  const auto o = order_sample(make_sample({2, 1, 2, 2}, {0, 1, 1, 0}));
  CHECK(o.sorted_times == std::vector<double>{1, 2, 2, 2});
  CHECK(o.concomitant_events == std::vector<int>{1, 1, 0, 0});
  CHECK(o.top(1) == 2.0);
  CHECK(o.top_event(1) == 0);
  CHECK(o.threshold(3) == 1.0);
}

TEST_CASE("validate rejects malformed samples", "[survival][errors]") {
  CHECK(code_of([] { make_sample({}, {}); }) == ErrorCode::EmptySample);
  CHECK(code_of([] { make_sample({1, 2}, {1}); }) == ErrorCode::InvalidSample);
  CHECK(code_of([] { make_sample({-1, 2}, {1, 0}); }) == ErrorCode::InvalidSample);
  CHECK(code_of([] { make_sample({1, 2}, {1, 2}); }) == ErrorCode::InvalidSample);
  CHECK(code_of([] { make_sample({1, std::nan("")}, {1, 0}); }) == ErrorCode::InvalidSample);
}

TEST_CASE("exceedances over the k-th largest order statistic", "[survival]") {
  const auto o = order_sample(make_sample({1, 2, 4, 8, 16}, {1, 0, 1, 1, 0}));
  const auto raw = exceedances(o, 3, false);
  CHECK(raw.times == std::vector<double>{2, 6, 14});
  CHECK(raw.events == std::vector<int>{1, 1, 0});
  const auto logs = exceedances(o, 3, true);
  CHECK_THAT(logs.times[2], WithinAbs(std::log(8.0), 1e-15));
  CHECK(code_of([&] { exceedances(o, 0, false); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { exceedances(o, 5, false); }) == ErrorCode::InvalidK);
  const auto zero = order_sample(make_sample({0, 1, 2}, {1, 1, 0}));
  CHECK(code_of([&] { exceedances(zero, 2, true); }) == ErrorCode::NonPositiveThreshold);
  CHECK_NOTHROW(exceedances(zero, 2, false));
}

TEST_CASE("insufficiency count is ceil(fraction * n)", "[survival][stress]") {
  CHECK(insufficiency_count(100, 0.0) == 0);
  CHECK(insufficiency_count(100, 0.45) == 45);
  CHECK(insufficiency_count(100, 0.451) == 46);
  CHECK(insufficiency_count(20000, 0.05) == 1000);
  CHECK(insufficiency_count(7, 0.1) == 1);
  std::size_t prev = 0;
  for (int i = 0; i <= 90; ++i) {
    const std::size_t c = insufficiency_count(997, 0.005 * i);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("apply_insufficiency clears the top indicators", "[survival][stress]") {
  const auto s = make_sample({5, 1, 3, 3, 4, 2}, {1, 1, 1, 1, 1, 1});
  const auto m = apply_insufficiency(s, 0.5);
  // top three by time: 5, 4 and the later 3
  CHECK(m.events == std::vector<int>{0, 1, 1, 0, 0, 1});
  CHECK(m.times == s.times);
  CHECK(apply_insufficiency(m, 0.5).events == m.events);
  CHECK(apply_insufficiency(s, 0.0).events == s.events);
  CHECK(code_of([&] { apply_insufficiency(s, 1.0); }) == ErrorCode::InvalidFraction);
  CHECK(code_of([&] { apply_insufficiency(s, -0.1); }) == ErrorCode::InvalidFraction);
}

TEST_CASE("apply_insufficiency is monotone in the fraction", "[survival][stress][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> z(200);
  std::vector<int> d(200);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = unif(rng);
    d[i] = unif(rng) < 0.7;
  }
  const auto s = make_sample(z, d);
  double prev_pn = 1.0;
  for (int i = 0; i <= 9; ++i) {
    const auto m = apply_insufficiency(s, 0.05 * i);
    for (std::size_t j = 0; j < z.size(); ++j) CHECK(m.events[j] <= d[j]);
    const double pn = km_fit(m).last_value();
    CHECK(pn <= prev_pn);
    prev_pn = pn;
  }
}
