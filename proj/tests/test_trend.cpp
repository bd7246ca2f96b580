#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "tlsw/error.hpp"
#include "tlsw/simulation.hpp"
#include "tlsw/trend.hpp"

using namespace tlsw;

namespace {

ScaleTimeArray single_row(std::vector<double> v) {
  ScaleTimeArray a(1, v.size());
  std::copy(v.begin(), v.end(), a.level(1).begin());
  return a;
}

TimeSeries trend_series(const std::string& name, std::size_t n) {
  const TrendSpec spec = builtin_trend(name);
  TimeSeries x;
  for (std::size_t t = 0; t < n; ++t) x.values.push_back(spec.value(static_cast<double>(t) / n));
  return x;
}

double mse(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("non-positive variances take the nearest positive neighbour") {
  auto a = single_row({-1, 2, 3});
  CHECK(repair_nonpositive(a) == 1);
  CHECK(std::vector<double>(a.level(1).begin(), a.level(1).end()) == std::vector<double>{2, 2, 3});

  auto tie = single_row({2, 0, 5});
  repair_nonpositive(tie);
  CHECK(tie(1, 1) == 2.0);

  auto run = single_row({1, -1, -2, -3, 7});
  CHECK(repair_nonpositive(run) == 3);
  CHECK(std::vector<double>(run.level(1).begin(), run.level(1).end()) ==
        std::vector<double>{1, 1, 1, 7, 7});

  auto dead = single_row({0, -1, -2});
  try {
    repair_nonpositive(dead);
    FAIL("expected AllNegativeRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllNegativeRow);
  }
}

TEST_CASE("coefficient variances of Haar white noise") {
  const int deep = 14;
  const auto cross = trend_cross_matrix("haar", "haar", deep);
  ScaleTimeArray s(deep, 4);
  for (int l = 1; l <= deep; ++l) {
    for (double& v : s.level(static_cast<std::size_t>(l))) v = std::ldexp(1.0, -l);
  }
  const auto var = coefficient_variance(s, cross, 3);
  CHECK(var.repaired == 0);
  CHECK(var.values.levels() == 3);
  CHECK(var.values(1, 0) == doctest::Approx(1.0).epsilon(1e-3));

  std::vector<double> draws;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const auto c = ndwt(test::gaussian_vector(64, 9000 + r), make_filter(Family::Haar, 1), 1);
    draws.push_back(c.details(1, 10));
  }
  CHECK(test::sample_var(draws) == doctest::Approx(var.values(1, 0)).epsilon(0.05));

  CHECK_THROWS_AS(coefficient_variance(ScaleTimeArray(deep, 4, 0.0), cross, 3), Error);
}

TEST_CASE("zero thresholds reproduce the series") {
  const auto x = TimeSeries{test::gaussian_vector(256, 31), std::nullopt};
  for (auto rule : {ThresholdRule::Hard, ThresholdRule::Soft}) {
    for (auto transform : {TrendTransform::TI, TrendTransform::DWT}) {
      TrendConfig cfg;
      cfg.rule = rule;
      cfg.transform = transform;
      const auto t = estimate_trend_with_variances(x, ScaleTimeArray(8, 256, 0.0), cfg);
      CHECK(test::max_abs_diff(t.mu_hat, x.values) < 1e-10);
      CHECK(t.config.depth == 5);
    }
  }
}

TEST_CASE("larger variances never keep more coefficients") {
  const auto x = TimeSeries{test::gaussian_vector(256, 32), std::nullopt};
  TrendConfig cfg;
  std::size_t previous = SIZE_MAX;
  for (double v : {0.001, 0.01, 0.1, 0.5, 1.0, 4.0}) {
    const auto t = estimate_trend_with_variances(x, ScaleTimeArray(5, 256, v), cfg);
    CHECK(t.coefficients_kept <= previous);
    previous = t.coefficients_kept;
  }
}

TEST_CASE("soft thresholding shrinks every coefficient") {
  const auto x = TimeSeries{test::gaussian_vector(256, 33), std::nullopt};
  TrendConfig cfg;
  cfg.rule = ThresholdRule::Soft;
  cfg.transform = TrendTransform::DWT;
  const double var = 0.05;
  const auto t = estimate_trend_with_variances(x, ScaleTimeArray(5, 256, var), cfg);
  const WaveletFilter f = parse_filter(cfg.wavelet);
  const auto before = dwt(x.values, f, 5);
  const auto after = dwt(t.mu_hat, f, 5);
  const double lambda = std::sqrt(var) * std::sqrt(2.0 * std::log(256.0));
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t k = 0; k < before.details[r].size(); ++k) {
      const double d = before.details[r][k];
      const double expected = std::copysign(std::max(std::abs(d) - lambda, 0.0), d);
      CHECK(std::abs(after.details[r][k]) <= std::abs(d) + 1e-12);
      CHECK(std::abs(after.details[r][k] - expected) < 1e-10);
    }
  }
}

TEST_CASE("a pure trend with a negligible spectrum passes through") {
  for (const char* name : {"linear", "sine", "logistic", "piecewise_quadratic"}) {
    CAPTURE(name);
    const auto x = trend_series(name, 1024);
    SpectrumEstimate s;
    s.values = ScaleTimeArray(7, 1024, 1e-30);
    s.config.centred = false;
    const auto t = estimate_trend(x, s, TrendConfig{});
    CHECK(test::max_abs_diff(t.mu_hat, x.values) < 1e-6);
    CHECK(t.negatives_repaired == 0);
  }
}

TEST_CASE("global baseline on noise-free and constant series") {
  const auto x = trend_series("sine", 512);
  CHECK(mse(estimate_trend_global_baseline(x, TrendConfig{}).mu_hat, x.values) < 1e-3);
  const TimeSeries c{std::vector<double>(512, 2.25), std::nullopt};
  for (double v : estimate_trend_global_baseline(c, TrendConfig{}).mu_hat) CHECK(std::abs(v - 2.25) < 1e-12);
}

TEST_CASE("trend estimate removes most of the noise") {
  SimConfig sim;
  sim.spectrum = builtin_spectrum("S1");
  sim.trend = builtin_trend("linear");
  sim.seed = 515;
  const auto x = simulate_lsw(sim);
  const auto truth = simulated_mean(sim);
  SpectralConfig sc;
  const SpectralEstimator est(sc, 1024);
  const auto t = estimate_trend(x, est.estimate(x), TrendConfig{});
  CHECK(t.config.depth == 7);
  CHECK(t.variances.levels() == 7);
  for (double v : t.variances.flat()) CHECK(v > 0.0);
  CHECK(mse(t.mu_hat, truth) < 0.25 * mse(x.values, truth));
}

TEST_CASE("trend argument errors") {
  const TimeSeries x{std::vector<double>(64, 0.0), std::nullopt};
  TrendConfig cfg;
  cfg.depth = 7;
  CHECK_THROWS_AS(estimate_trend_with_variances(x, ScaleTimeArray(7, 64, 1.0), cfg), Error);
  cfg.depth = 3;
  CHECK_THROWS_AS(estimate_trend_with_variances(x, ScaleTimeArray(2, 64, 1.0), cfg), Error);
  SpectrumEstimate s;
  s.values = ScaleTimeArray(3, 128, 1.0);
  CHECK_THROWS_AS(estimate_trend(x, s, cfg), Error);
}
