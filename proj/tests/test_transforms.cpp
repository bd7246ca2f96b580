#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "tlsw/error.hpp"
#include "tlsw/operators.hpp"
#include "tlsw/transforms.hpp"

using namespace tlsw;

namespace {

TimeSeries series(std::vector<double> v) { return TimeSeries{std::move(v), std::nullopt}; }

// d_{j,k} = sum_t x_t psi_{j,(k-t) mod T}
double naive_coefficient(const std::vector<double>& x, std::span<const double> psi, std::size_t k) {
  const std::size_t n = x.size();
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t m = 0; m < psi.size(); ++m) {
      if ((t + m) % n == k) acc += x[t] * psi[m];
    }
  }
  return acc;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("difference examples") {
  const auto c = difference(series({4, 4, 4, 4, 4}), 1);
  for (double v : c.values) CHECK(v == 0.0);

  std::vector<double> ramp(10);
  for (std::size_t t = 0; t < ramp.size(); ++t) ramp[t] = static_cast<double>(t);
  for (double v : difference(series(ramp), 1).values) CHECK(v == 1.0);

  const auto d2 = difference(series({1, 3, 6, 10}), 2);
  REQUIRE(d2.size() == 4);
  CHECK(d2.values[2] == 1.0);
  CHECK(d2.values[3] == 1.0);
  CHECK(d2.values[0] == d2.values[2]);
  CHECK(d2.values[1] == d2.values[2]);

  CHECK(code_of([] { difference(series({1, 2}), 2); }) == ErrorCode::SeriesTooShort);
  CHECK(code_of([] { difference(series({1, 2}), 0); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("higher differences compose on the interior") {
  const auto x = series(test::gaussian_vector(40, 3));
  for (int n = 2; n <= 4; ++n) {
    TimeSeries repeated = x;
    for (int i = 0; i < n; ++i) repeated = difference(repeated, 1);
    const auto direct = difference(x, n);
    for (std::size_t t = 2 * static_cast<std::size_t>(n); t < x.size(); ++t) {
      CHECK(std::abs(direct.values[t] - repeated.values[t]) < 1e-12);
    }
  }
}

TEST_CASE("circular difference wraps around") {
  const auto d = circular_difference(series({1, 3, 6, 10}), 1);
  CHECK(d.values == std::vector<double>{-9, 2, 3, 4});
  const auto d2 = circular_difference(series({1, 3, 6, 10}), 2);
  CHECK(d2.values == std::vector<double>{-9 - 4, 2 + 9, 1, 1});
  CHECK(code_of([] { circular_difference(series({1}), 1); }) == ErrorCode::SeriesTooShort);
}

TEST_CASE("seasonal difference examples") {
  std::vector<double> seasonal(60);
  for (std::size_t t = 0; t < seasonal.size(); ++t) seasonal[t] = std::sin(0.7 * static_cast<double>(t % 12)) + static_cast<double>(t % 12);
  for (double v : seasonal_difference(series(seasonal), 12).values) CHECK(std::abs(v) < 1e-12);

  const auto x = series(test::gaussian_vector(20, 9));
  CHECK(seasonal_difference(x, 1).values == difference(x, 1).values);

  std::vector<double> ramp(10);
  for (std::size_t t = 0; t < ramp.size(); ++t) ramp[t] = static_cast<double>(t);
  for (double v : seasonal_difference(series(ramp), 3).values) CHECK(v == 3.0);
  CHECK(code_of([] { seasonal_difference(series({1, 2, 3}), 3); }) == ErrorCode::SeriesTooShort);
}

TEST_CASE("ndwt equals the naive double loop") {
  const auto x = test::gaussian_vector(16, 21);
  for (const char* name : {"haar", "ep2", "la4"}) {
    CAPTURE(name);
    const WaveletFilter f = parse_filter(name);
    const DiscreteWaveletSet w(f, 4);
    const auto fast = ndwt(x, f, 4);
    const auto direct = ndwt_direct(x, w, 4);
    for (int lev = 1; lev <= 4; ++lev) {
      for (std::size_t k = 0; k < 16; ++k) {
        const double naive = naive_coefficient(x, w.at(lev), k);
        CHECK(std::abs(fast.details(lev, k) - naive) < 1e-12);
        CHECK(std::abs(direct(lev, k) - naive) < 1e-12);
      }
    }
  }
}

TEST_CASE("ndwt of an impulse reproduces the wavelet") {
  const WaveletFilter f = make_filter(Family::Haar, 1);
  const DiscreteWaveletSet w(f, 1);
  std::vector<double> x(16, 0.0);
  const std::size_t t0 = 5;
  x[t0] = 1.0;
  const auto c = ndwt(x, f, 3);
  for (std::size_t k = 0; k < 16; ++k) {
    const std::size_t m = (k + 16 - t0) % 16;
    CHECK(c.details(1, k) == (m < 2 ? w.at(1)[m] : 0.0));
  }
}

TEST_CASE("ndwt of a constant has no detail") {
  for (const char* name : {"haar", "ep4", "la8"}) {
    const auto c = ndwt(std::vector<double>(64, 3.5), parse_filter(name), 5);
    for (double v : c.details.flat()) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("ndwt is linear") {
  const auto x = test::gaussian_vector(128, 1);
  const auto y = test::gaussian_vector(128, 2);
  std::vector<double> z(128);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = 2.5 * x[i] - 0.75 * y[i];
  const WaveletFilter f = parse_filter("ep4");
  const auto cx = ndwt(x, f, 6), cy = ndwt(y, f, 6), cz = ndwt(z, f, 6);
  for (std::size_t i = 0; i < cz.details.flat().size(); ++i) {
    CHECK(std::abs(cz.details.flat()[i] - (2.5 * cx.details.flat()[i] - 0.75 * cy.details.flat()[i])) < 1e-10);
  }
}

TEST_CASE("Haar finest-scale energy equals half the squared circular increments") {
  const auto x = test::gaussian_vector(16, 4);
  const auto c = ndwt(x, make_filter(Family::Haar, 1), 1);
  double energy = 0.0, increments = 0.0;
  for (std::size_t k = 0; k < 16; ++k) {
    energy += c.details(1, k) * c.details(1, k);
    const double d = x[k] - x[(k + 15) % 16];
    increments += d * d / 2.0;
  }
  CHECK(std::abs(energy - increments) < 1e-12);
}

TEST_CASE("ndwt argument errors") {
  const WaveletFilter f = parse_filter("ep2");
  CHECK(code_of([&] { ndwt(std::vector<double>(24, 0.0), f, 2); }) == ErrorCode::NonDyadicLength);
  CHECK(code_of([&] { ndwt(std::vector<double>(16, 0.0), f, 5); }) == ErrorCode::DepthExceeded);
  CHECK(code_of([&] { ndwt(std::vector<double>{1.0, NAN, 0.0, 0.0}, f, 1); }) == ErrorCode::InvalidArgument);
  CHECK(is_dyadic(1024));
  CHECK_FALSE(is_dyadic(1000));
  CHECK(dyadic_log2(1024) == 10);
}

TEST_CASE("translation-invariant reconstruction") {
  for (const char* name : {"haar", "ep4", "la10"}) {
    CAPTURE(name);
    const WaveletFilter f = parse_filter(name);
    const auto x = test::gaussian_vector(256, 17);
    const auto c = ndwt(x, f, 6);
    CHECK(test::max_abs_diff(ti_reconstruct(c), x) < 1e-10);

    NdwtCoefficients flat = ndwt(std::vector<double>(256, -1.25), f, 6);
    for (double& v : flat.details.flat()) v = 0.0;
    for (double v : ti_reconstruct(flat)) CHECK(std::abs(v + 1.25) < 1e-12);
  }
  const auto c = ndwt(std::vector<double>(16, 0.0), parse_filter("haar"), 2);
  CHECK(code_of([&] { ti_reconstruct(c, std::vector<double>(8, 0.0)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("decimated transform is a subsample of the non-decimated one") {
  const WaveletFilter f = parse_filter("ep3");
  const auto x = test::gaussian_vector(64, 23);
  const auto d = dwt(x, f, 4);
  const auto nd = ndwt(x, f, 4);
  for (int r = 1; r <= 4; ++r) {
    const auto& row = d.details[static_cast<std::size_t>(r - 1)];
    REQUIRE(row.size() == (std::size_t{64} >> r));
    for (std::size_t k = 0; k < row.size(); ++k) {
      CHECK(std::abs(row[k] - nd.details(r, (std::size_t{1} << r) * k)) < 1e-12);
    }
  }
  CHECK(test::max_abs_diff(idwt(d), x) < 1e-12);
}

TEST_CASE("periodogram squares the coefficients") {
  const auto zero = periodogram(ndwt(std::vector<double>(32, 0.0), parse_filter("ep2"), 3));
  for (double v : zero.values.flat()) CHECK(v == 0.0);
  const auto c = ndwt(test::gaussian_vector(32, 5), parse_filter("ep2"), 3);
  const auto p = periodogram(c, PeriodogramSource::Differenced, 1);
  CHECK(p.source == PeriodogramSource::Differenced);
  CHECK(p.source_parameter == 1);
  CHECK_FALSE(p.smoothed);
  for (std::size_t i = 0; i < p.values.flat().size(); ++i) {
    CHECK(p.values.flat()[i] == c.details.flat()[i] * c.details.flat()[i]);
  }
}

TEST_CASE("white-noise finest coefficients have unit variance") {
  const WaveletFilter f = parse_filter("ep4");
  std::vector<double> draws;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const auto c = ndwt(test::gaussian_vector(16, 1000 + r), f, 1);
    draws.push_back(c.details(1, 7));
  }
  const double var = test::sample_var(draws);
  // Var of a sample variance of N(0,1) is about 2/(n-1).
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / 999.0));
}

TEST_CASE("differenced Haar MA periodogram means") {
  const WaveletFilter haar = make_filter(Family::Haar, 1);
  const std::size_t n = 1024;
  double m1 = 0.0, m2 = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto xi = test::gaussian_vector(n + 1, 500 + static_cast<std::uint64_t>(r));
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = (xi[t + 1] - xi[t]) / std::sqrt(2.0);
    const auto dx = circular_difference(series(x), 1);
    const auto p = periodogram(ndwt(dx.values, haar, 2));
    m1 += test::sample_mean(p.values.level(1));
    m2 += test::sample_mean(p.values.level(2));
  }
  m1 /= reps;
  m2 /= reps;
  CHECK(m1 == doctest::Approx(5.0).epsilon(0.05));
  CHECK(m2 == doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("Haar white-noise periodogram matches the A-weighted spectrum") {
  const WaveletFilter haar = make_filter(Family::Haar, 1);
  const int deep = 16;
  const AutocorrWaveletSet acw(haar, deep);
  const auto a = inner_product_matrix(acw, deep, 0);
  std::vector<double> mean(4, 0.0);
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    const auto p = periodogram(ndwt(test::gaussian_vector(1024, 77 + static_cast<std::uint64_t>(r)), haar, 4));
    for (int lev = 1; lev <= 4; ++lev) mean[lev - 1] += test::sample_mean(p.values.level(lev)) / reps;
  }
  for (int lev = 1; lev <= 4; ++lev) {
    double expected = 0.0;
    for (int l = 1; l <= deep; ++l) expected += a.at(lev, l) * std::ldexp(1.0, -l);
    CAPTURE(lev);
    CHECK(expected == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(mean[lev - 1] == doctest::Approx(expected).epsilon(0.05));
  }
}
