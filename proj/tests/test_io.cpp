#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>

#include "support.hpp"
#include "tlsw/error.hpp"
#include "tlsw/io.hpp"

using namespace tlsw;

TEST_CASE("doubles print in shortest round-trip form") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324,
                   std::numeric_limits<double>::max()}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  for (double v : test::gaussian_vector(200, 61)) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
}

TEST_CASE("series CSV parsing") {
  const auto bare = parse_series_csv("1\n2.5\n-3\n");
  CHECK(bare.values == std::vector<double>{1, 2.5, -3});
  CHECK_FALSE(bare.origin.has_value());

  const auto headed = parse_series_csv("value\n4\n5\n");
  CHECK(headed.values == std::vector<double>{4, 5});

  const auto table = parse_series_csv("time,value\r\n10,1\r\n10.5,2\r\n11,3\r\n");
  CHECK(table.values == std::vector<double>{1, 2, 3});
  REQUIRE(table.origin.has_value());
  CHECK(table.origin->start == 10.0);
  CHECK(table.origin->interval == 0.5);

  auto io_error = [](std::string_view text) {
    try {
      parse_series_csv(text);
    } catch (const Error& e) {
      return e.code() == ErrorCode::IoError;
    }
    return false;
  };
  CHECK(io_error(""));
  CHECK(io_error("a,b,c\n1,2,3\n"));
  CHECK(io_error("value\n1\nx\n"));
  CHECK(io_error("value\n1\nnan\n"));
}

TEST_CASE("series and spectrum CSV round trips") {
  const TimeSeries x{test::gaussian_vector(50, 62), std::nullopt};
  const std::string csv = series_csv(x);
  CHECK(csv.rfind("time_index,value\n0,", 0) == 0);
  CHECK(parse_series_csv(csv).values == x.values);

  ScaleTimeArray s(3, 20);
  const auto g = test::gaussian_vector(60, 63);
  std::copy(g.begin(), g.end(), s.flat().begin());
  const std::string sc = spectrum_csv(s);
  CHECK(sc.rfind("scale,j,time_index,value\n1,-1,0,", 0) == 0);
  CHECK(parse_spectrum_csv(sc) == s);
  CHECK_THROWS_AS(parse_spectrum_csv("scale,j,time_index,value\n1,-1,0,1\n2,-2,1,1\n"), Error);
}

TEST_CASE("LACV and trend CSV layouts") {
  LacvEstimate c;
  c.length = 2;
  c.max_lag = 1;
  c.values = {1.0, -0.5, 2.0, 0.25};
  CHECK(lacv_csv(c) == "time_index,lag,value\n0,0,1\n0,1,-0.5\n1,0,2\n1,1,0.25\n");

  TrendEstimate t;
  t.mu_hat = {1.5, 2.0};
  t.variances = ScaleTimeArray(1, 2, 4.0);
  CHECK(trend_csv(t) == "time_index,value,local_sd\n0,1.5,2\n1,2,2\n");
}

TEST_CASE("configuration JSON round trips") {
  SpectralConfig sc;
  sc.wavelet = "la6";
  sc.depth = 5;
  sc.detrend = Detrend::seasonal(12);
  sc.smoother = Smoother::ti("ep2");
  sc.boundary = Boundary::Periodic;
  sc.centred = false;
  const SpectralConfig back = spectral_config_from_json(to_json(sc));
  CHECK(back.wavelet == "la6");
  CHECK(back.depth == 5);
  CHECK(back.detrend == Detrend::seasonal(12));
  CHECK(back.smoother.kind == Smoother::Kind::TiThreshold);
  CHECK(back.smoother.wavelet == "ep2");
  CHECK(back.boundary == Boundary::Periodic);
  CHECK_FALSE(back.centred);
  CHECK_THROWS_AS(spectral_config_from_json(nlohmann::json{{"detrend", "diff7"}}), Error);

  TrendConfig tc;
  tc.wavelet = "la8";
  tc.rule = ThresholdRule::Soft;
  tc.transform = TrendTransform::DWT;
  const TrendConfig tb = trend_config_from_json(to_json(tc));
  CHECK(tb.wavelet == "la8");
  CHECK(tb.rule == ThresholdRule::Soft);
  CHECK(tb.transform == TrendTransform::DWT);
}

TEST_CASE("digests and manifests") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(digest("abc") != digest("abd"));

  const auto dir = std::filesystem::temp_directory_path() / "tlsw_io_test";
  std::filesystem::remove_all(dir);
  RunManifest m;
  m.command = "simulate";
  m.config = {{"seed", 3}};
  m.seeds = {3};
  m.add_output(dir, "series.csv", "time_index,value\n0,1\n");
  write_manifest(dir, m);
  CHECK(read_text(dir / "series.csv") == "time_index,value\n0,1\n");
  const auto j = read_json(dir / "manifest.json");
  CHECK(j["command"] == "simulate");
  CHECK(j["seeds"][0] == 3);
  CHECK(j["outputs"][0]["file"] == "series.csv");
  CHECK(j["outputs"][0]["digest"] == digest("time_index,value\n0,1\n"));
  CHECK(j["version"] == version());
  std::filesystem::remove_all(dir);

  try {
    read_text(dir / "missing.csv");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
