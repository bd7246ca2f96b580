#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "tlsw/error.hpp"
#include "tlsw/wavelet.hpp"

using namespace tlsw;

namespace {

// PyWavelets 1.8 dec_lo, i.e. the low-pass filter in reversed order.
const std::vector<double> kPywtDb2 = {-0.12940952255126037, 0.2241438680420134, 0.8365163037378079,
                                      0.48296291314453416};
const std::vector<double> kPywtDb4 = {-0.010597401785069032, 0.0328830116668852,
                                      0.030841381835560764,  -0.18703481171909309,
                                      -0.027983769416859854, 0.6308807679298589,
                                      0.7148465705529157,    0.2303778133088965};
const std::vector<double> kPywtSym4 = {-0.07576571478927333, -0.02963552764599851,
                                       0.49761866763201545,  0.8037387518059161,
                                       0.29785779560527736,  -0.09921954357684722,
                                       -0.012603967262037833, 0.0322231006040427};
const std::vector<double> kPywtDb10 = {
    -1.3264202894521244e-05, 9.358867032006959e-05,  -0.00011646685512928545,
    -0.0006858566949597116,  0.001992405295185056,   0.001395351747052901,
    -0.010733175483330575,   0.0036065535669561697,  0.033212674059341,
    -0.029457536821875813,   -0.07139414716639708,   0.09305736460357235,
    0.12736934033579325,     -0.19594627437737705,   -0.24984642432731538,
    0.2811723436605775,      0.6884590394536035,     0.5272011889317256,
    0.1881768000776915,      0.026670057900555554};
const std::vector<double> kPywtSym10 = {
    0.0007701598091144901,  9.563267072289475e-05,  -0.008641299277022422,
    -0.0014653825813050513, 0.0459272392310922,     0.011609893903711381,
    -0.15949427888491757,   -0.07088053578324385,   0.47169066693843925,
    0.7695100370211071,     0.38382676106708546,    -0.03553674047381755,
    -0.0319900568824278,    0.04999497207737669,    0.005764912033581909,
    -0.02035493981231129,   -0.0008043589320165449, 0.004593173585311828,
    5.7036083618494284e-05, -0.0004593294210046588};

double equal_up_to_reversal(const std::vector<double>& h, const std::vector<double>& ref) {
  std::vector<double> r(ref.rbegin(), ref.rend());
  return std::min(test::max_abs_diff(h, ref), test::max_abs_diff(h, r));
}

std::vector<WaveletFilter> all_filters() {
  std::vector<WaveletFilter> out{make_filter(Family::Haar, 1)};
  for (int n = 1; n <= kMaxVanishingMoments; ++n) out.push_back(make_filter(Family::DaubExtremalPhase, n));
  for (int n = 2; n <= kMaxVanishingMoments; ++n) out.push_back(make_filter(Family::DaubLeastAsymmetric, n));
  return out;
}

// Continuous Haar autocorrelation wavelet.
double haar_psi(double u) {
  u = std::abs(u);
  if (u <= 0.5) return 1.0 - 3.0 * u;
  if (u <= 1.0) return u - 1.0;
  return 0.0;
}

}  // namespace

TEST_CASE("Haar filter is the definitional pair") {
  const WaveletFilter h = make_filter(Family::Haar, 1);
  REQUIRE(h.taps() == 2);
  CHECK(h.low_pass[0] == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-15));
  CHECK(h.low_pass[1] == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-15));
  CHECK(h.name() == "haar");
  const WaveletFilter ep1 = make_filter(Family::DaubExtremalPhase, 1);
  CHECK(ep1.low_pass == h.low_pass);
  CHECK(ep1.high_pass == h.high_pass);
}

TEST_CASE("Daubechies filters satisfy the orthonormality identities") {
  for (const auto& f : all_filters()) {
    CAPTURE(f.name());
    double sum = 0.0, sq = 0.0;
    for (double v : f.low_pass) {
      sum += v;
      sq += v * v;
    }
    CHECK(std::abs(sum - std::numbers::sqrt2) < 1e-12);
    CHECK(std::abs(sq - 1.0) < 1e-12);
    const std::size_t n = f.taps();
    CHECK(n == 2 * static_cast<std::size_t>(f.vanishing_moments));
    for (std::size_t shift = 2; shift < n; shift += 2) {
      double acc = 0.0;
      for (std::size_t k = 0; k + shift < n; ++k) acc += f.low_pass[k] * f.low_pass[k + shift];
      CHECK(std::abs(acc) < 1e-12);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      CHECK(f.high_pass[k] == sign * f.low_pass[n - 1 - k]);
    }
  }
}

TEST_CASE("Daubechies filters agree with published coefficient tables") {
  CHECK(equal_up_to_reversal(make_filter(Family::DaubExtremalPhase, 2).low_pass, kPywtDb2) < 1e-12);
  CHECK(equal_up_to_reversal(make_filter(Family::DaubExtremalPhase, 4).low_pass, kPywtDb4) < 1e-12);
  CHECK(equal_up_to_reversal(make_filter(Family::DaubExtremalPhase, 10).low_pass, kPywtDb10) < 1e-10);
  CHECK(equal_up_to_reversal(make_filter(Family::DaubLeastAsymmetric, 4).low_pass, kPywtSym4) < 1e-12);
  CHECK(equal_up_to_reversal(make_filter(Family::DaubLeastAsymmetric, 10).low_pass, kPywtSym10) < 1e-10);
}

TEST_CASE("filter names parse and unsupported filters are rejected") {
  CHECK(parse_filter("ep4").low_pass == make_filter(Family::DaubExtremalPhase, 4).low_pass);
  CHECK(parse_filter("db4").low_pass == make_filter(Family::DaubExtremalPhase, 4).low_pass);
  CHECK(parse_filter("sym8").low_pass == make_filter(Family::DaubLeastAsymmetric, 8).low_pass);
  CHECK(parse_filter("la8").name() == "la8");
  CHECK_THROWS_AS(parse_filter("ep11"), Error);
  CHECK_THROWS_AS(parse_filter("mexican_hat"), Error);
  CHECK_THROWS_AS(make_filter(Family::Haar, 2), Error);
  CHECK_THROWS_AS(make_filter(Family::DaubExtremalPhase, 0), Error);
  try {
    make_filter(Family::DaubLeastAsymmetric, 11);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFilter);
  }
}

TEST_CASE("cascade wavelets have the stated lengths and unit norm") {
  for (const auto& f : all_filters()) {
    CAPTURE(f.name());
    const DiscreteWaveletSet w(f, 8);
    for (int lev = 1; lev <= 8; ++lev) {
      const auto psi = w.at(lev);
      CHECK(psi.size() == ((std::size_t{1} << lev) - 1) * (f.taps() - 1) + 1);
      CHECK(psi.size() == wavelet_length(f.taps(), lev));
      double sq = 0.0, sum = 0.0;
      for (double v : psi) {
        sq += v * v;
        sum += v;
      }
      CHECK(std::abs(sq - 1.0) < 1e-10);
      CHECK(std::abs(sum) < 1e-10);
    }
    const auto psi1 = w.at(1);
    CHECK(std::equal(psi1.begin(), psi1.end(), f.high_pass.begin()));
  }
}

TEST_CASE("Haar cascade wavelets") {
  const DiscreteWaveletSet w(make_filter(Family::Haar, 1), 2);
  const auto psi1 = w.at(1);
  REQUIRE(psi1.size() == 2);
  CHECK(std::abs(psi1[0]) == doctest::Approx(std::numbers::sqrt2 / 2));
  CHECK(psi1[0] == doctest::Approx(-psi1[1]));
  const auto psi2 = w.at(2);
  REQUIRE(psi2.size() == 4);
  for (double v : psi2) CHECK(std::abs(v) == doctest::Approx(0.5));
  CHECK(psi2[0] == doctest::Approx(psi2[1]));
  CHECK(psi2[2] == doctest::Approx(-psi2[0]));
  CHECK_THROWS_AS(DiscreteWaveletSet(make_filter(Family::Haar, 1), kMaxDepth + 1), Error);
}

TEST_CASE("autocorrelation wavelets: unit peak, symmetry, bound") {
  for (const auto& f : all_filters()) {
    CAPTURE(f.name());
    const AutocorrWaveletSet acw(f, 6);
    for (int lev = 1; lev <= 6; ++lev) {
      const auto max_lag = acw.max_lag(lev);
      CHECK(static_cast<std::size_t>(max_lag) == wavelet_length(f.taps(), lev) - 1);
      CHECK(std::abs(acw.value(lev, 0) - 1.0) < 1e-12);
      CHECK(acw.value(lev, max_lag + 1) == 0.0);
      for (std::ptrdiff_t tau = 1; tau <= max_lag; ++tau) {
        CHECK(acw.value(lev, tau) == acw.value(lev, -tau));
        CHECK(std::abs(acw.value(lev, tau)) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("autocorrelation wavelets match the direct autocorrelation") {
  for (const char* name : {"haar", "ep3", "la6", "ep10"}) {
    CAPTURE(name);
    const DiscreteWaveletSet w(parse_filter(name), 6);
    const AutocorrWaveletSet acw(w);
    for (int lev = 1; lev <= 6; ++lev) {
      CHECK(test::max_abs_diff(autocorrelate(w.at(lev)), acw.values(lev)) < 1e-12);
    }
  }
}

TEST_CASE("Haar autocorrelation wavelets equal the discretised closed form") {
  const AutocorrWaveletSet acw(make_filter(Family::Haar, 1), 10);
  CHECK(acw.value(1, 1) == doctest::Approx(-0.5));
  CHECK(acw.value(2, 1) == doctest::Approx(0.25));
  for (int lev = 1; lev <= 10; ++lev) {
    const double scale = std::ldexp(1.0, lev);
    for (std::ptrdiff_t tau = -acw.max_lag(lev); tau <= acw.max_lag(lev); ++tau) {
      CHECK(std::abs(acw.value(lev, tau) - haar_psi(static_cast<double>(tau) / scale)) < 1e-12);
    }
  }
}

TEST_CASE("autocorrelation wavelets are invariant to the sign of g") {
  WaveletFilter f = parse_filter("ep4");
  const AutocorrWaveletSet a(f, 5);
  for (double& g : f.high_pass) g = -g;
  const AutocorrWaveletSet b(f, 5);
  for (int lev = 1; lev <= 5; ++lev) CHECK(test::max_abs_diff(a.values(lev), b.values(lev)) == 0.0);
}

TEST_CASE("energy centre") {
  CHECK(energy_centre(std::vector<double>{1.0}) == 0);
  CHECK(energy_centre(std::vector<double>{0.0, 0.0, 1.0}) == 2);
  const DiscreteWaveletSet w(make_filter(Family::Haar, 1), 4);
  // symmetric energy over 0..2^m - 1
  CHECK(energy_centre(w.at(3)) == 4);
  CHECK(energy_centre(w.at(4)) == 8);
}
