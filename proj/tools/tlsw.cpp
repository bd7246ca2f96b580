// Command-line front end: simulate, estimate-spectrum, estimate-trend, lacv,
// benchmark.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "tlsw/benchmark.hpp"
#include "tlsw/error.hpp"
#include "tlsw/io.hpp"
#include "tlsw/lacv.hpp"
#include "tlsw/simulation.hpp"
#include "tlsw/stats.hpp"
#include "tlsw/spectral.hpp"
#include "tlsw/trend.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tlsw;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::NonDyadicLength:
    case ErrorCode::AllNegativeRow:
    case ErrorCode::SeriesTooShort:
      return kNumeric;
    case ErrorCode::IoError:
      return kIo;
    default:
      return kConfig;
  }
}

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::size_t replicates = 1;
  std::string out = ".";
  std::string detrend;
  std::string smoother;
  int depth = 0;
  bool pad_truncate = false;
  std::string input;
  std::string spectrum_path;
  bool auto_spectrum = false;
  std::string suite;
  int max_lag = -1;
  std::string wavelet;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

json load_config(const Common& c) {
  return c.config_path.empty() ? json::object() : read_json(c.config_path);
}

json section(const json& doc, const char* name) {
  return doc.contains(name) ? doc.at(name) : json::object();
}

SimConfig sim_config(const json& doc) {
  const json& j = doc.contains("simulation") ? doc.at("simulation") : doc;
  return j.get<SimConfig>();
}

SpectralConfig spectral_config(const Common& c, const json& doc) {
  SpectralConfig cfg = spectral_config_from_json(section(doc, "spectral"));
  if (!c.detrend.empty()) cfg.detrend = Detrend::parse(c.detrend);
  if (!c.smoother.empty()) cfg.smoother = Smoother::parse(c.smoother);
  if (c.depth > 0) cfg.depth = c.depth;
  if (!c.wavelet.empty()) {
    parse_filter(c.wavelet);
    cfg.wavelet = c.wavelet;
  }
  return cfg;
}

TimeSeries load_series(const Common& c, std::string& digest_out) {
  const std::string text = read_text(c.input);
  digest_out = digest(text);
  TimeSeries x = parse_series_csv(text);
  if (c.pad_truncate && !is_dyadic(x.size())) {
    std::size_t n = 1;
    while (n * 2 <= x.size()) n *= 2;
    x.values.resize(n);
  }
  if (!is_dyadic(x.size())) {
    fail(ErrorCode::NonDyadicLength, "input has " + std::to_string(x.size()) +
                                         " samples; use --pad-truncate to keep the largest dyadic prefix");
  }
  return x;
}

int cmd_simulate(const Common& c) {
  Timer timer;
  const json doc = load_config(c);
  SimConfig cfg = sim_config(doc);
  if (c.seed) cfg.seed = *c.seed;
  RunManifest m;
  m.command = "simulate";
  m.config = cfg;
  const fs::path dir = c.out;
  if (c.replicates <= 1) {
    m.seeds.push_back(cfg.seed);
    m.add_output(dir, "series.csv", series_csv(simulate_lsw(cfg)));
  } else {
    for (std::size_t r = 0; r < c.replicates; ++r) {
      SimConfig rc = cfg;
      rc.seed = realisation_seed(cfg.seed, 0, r);
      m.seeds.push_back(rc.seed);
      char name[32];
      std::snprintf(name, sizeof name, "series_%04zu.csv", r + 1);
      m.add_output(dir, name, series_csv(simulate_lsw(rc)));
    }
  }
  m.timings["total_seconds"] = timer.seconds();
  write_manifest(dir, m);
  return kOk;
}

int cmd_estimate_spectrum(const Common& c) {
  Timer timer;
  const json doc = load_config(c);
  const SpectralConfig cfg = spectral_config(c, doc);
  RunManifest m;
  m.command = "estimate-spectrum";
  const fs::path dir = c.out;
  SpectrumEstimate est;
  if (!c.input.empty()) {
    const TimeSeries x = load_series(c, m.input_digest);
    est = estimate_ews(x, cfg);
  } else if (doc.contains("simulation")) {
    // Average of the estimates over simulated replicates.
    const SimConfig base = sim_config(doc);
    const std::uint64_t seed = c.seed.value_or(base.seed);
    const SpectralEstimator estimator(cfg, base.length);
    const std::size_t n = std::max<std::size_t>(1, c.replicates);
    std::vector<SpectrumEstimate> runs(n);
    parallel_for(n, worker_count(0), [&](std::size_t r) {
      SimConfig rc = base;
      rc.seed = n == 1 ? seed : realisation_seed(seed, 0, r);
      runs[r] = estimator.estimate(simulate_lsw(rc));
    });
    est = runs[0];
    m.seeds.push_back(n == 1 ? seed : realisation_seed(seed, 0, 0));
    for (std::size_t r = 1; r < n; ++r) {
      m.seeds.push_back(realisation_seed(seed, 0, r));
      for (std::size_t i = 0; i < est.values.flat().size(); ++i) est.values.flat()[i] += runs[r].values.flat()[i];
    }
    for (double& v : est.values.flat()) v /= static_cast<double>(n);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t l = 0; l < est.negative_counts.size(); ++l) est.negative_counts[l] += runs[r].negative_counts[l];
    }
  } else {
    fail(ErrorCode::ConfigError, "estimate-spectrum needs an input CSV or a config with a simulation section");
  }
  m.config = {{"spectral", to_json(est.config)}, {"replicates", c.replicates}};
  m.add_output(dir, "spectrum.csv", spectrum_csv(est.values));
  json summary = spectrum_json(est);
  json row_means = json::array();
  for (std::size_t lev = 1; lev <= est.values.levels(); ++lev) row_means.push_back(mean(est.values.level(lev)));
  summary["row_means"] = row_means;
  m.add_output(dir, "spectrum.json", summary.dump(2) + "\n");
  m.timings["total_seconds"] = timer.seconds();
  write_manifest(dir, m);
  return kOk;
}

int cmd_estimate_trend(const Common& c) {
  Timer timer;
  const json doc = load_config(c);
  SpectralConfig scfg = spectral_config(c, doc);
  if (c.smoother.empty() && !section(doc, "spectral").contains("smoother")) {
    scfg.smoother = Smoother::running_mean(0);
  }
  TrendConfig tcfg = trend_config_from_json(section(doc, "trend"));
  if (c.input.empty()) fail(ErrorCode::ConfigError, "estimate-trend needs an input CSV");
  RunManifest m;
  m.command = "estimate-trend";
  const TimeSeries x = load_series(c, m.input_digest);
  SpectrumEstimate s;
  if (!c.spectrum_path.empty() && !c.auto_spectrum) {
    s.values = parse_spectrum_csv(read_text(c.spectrum_path));
    s.config = scfg;
    s.config.depth = static_cast<int>(s.values.levels());
  } else {
    s = estimate_ews(x, scfg);
  }
  const TrendEstimate t = estimate_trend(x, s, tcfg);
  m.config = {{"spectral", to_json(s.config)}, {"trend", to_json(t.config)},
              {"spectrum_source", c.spectrum_path.empty() || c.auto_spectrum ? "auto" : c.spectrum_path}};
  const fs::path dir = c.out;
  m.add_output(dir, "trend.csv", trend_csv(t));
  m.add_output(dir, "trend.json",
               json{{"negatives_repaired", t.negatives_repaired}, {"coefficients_kept", t.coefficients_kept}}
                       .dump(2) + "\n");
  m.timings["total_seconds"] = timer.seconds();
  write_manifest(dir, m);
  return kOk;
}

int cmd_lacv(const Common& c) {
  Timer timer;
  const json doc = load_config(c);
  const SpectralConfig cfg = spectral_config(c, doc);
  RunManifest m;
  m.command = "lacv";
  ScaleTimeArray spectrum;
  std::string wavelet = cfg.wavelet;
  if (!c.spectrum_path.empty()) {
    spectrum = parse_spectrum_csv(read_text(c.spectrum_path));
    m.input_digest = digest(read_text(c.spectrum_path));
  } else if (!c.input.empty()) {
    const SpectrumEstimate est = estimate_ews(load_series(c, m.input_digest), cfg);
    spectrum = est.values;
  } else {
    fail(ErrorCode::ConfigError, "lacv needs an input CSV or --spectrum");
  }
  const int scales = static_cast<int>(spectrum.levels());
  const AutocorrWaveletSet acw(parse_filter(wavelet), scales);
  const std::size_t max_lag = c.max_lag >= 0 ? static_cast<std::size_t>(c.max_lag) : default_max_lag(scales);
  const LacvEstimate est = lacv(spectrum, acw, scales, max_lag);
  m.config = {{"spectral", to_json(cfg)}, {"scales", scales}, {"max_lag", max_lag}};
  const fs::path dir = c.out;
  m.add_output(dir, "lacv.csv", lacv_csv(est));
  m.timings["total_seconds"] = timer.seconds();
  write_manifest(dir, m);
  return kOk;
}

int cmd_benchmark(const Common& c) {
  Timer timer;
  const json doc = load_config(c);
  const json b = section(doc, "benchmark");
  BenchmarkOptions o;
  try {
    o.suite = b.value("suite", o.suite);
    o.replicates = b.value("replicates", o.replicates);
    o.seed = b.value("seed", o.seed);
    o.length = b.value("length", o.length);
    o.generator = b.value("generator", o.generator);
    o.spectral_wavelet = b.value("spectral_wavelet", o.spectral_wavelet);
    o.spectral_depth = b.value("spectral_depth", o.spectral_depth);
    o.trend_half_width = b.value("trend_half_width", o.trend_half_width);
    o.trend_wavelet = b.value("trend_wavelet", o.trend_wavelet);
    o.trend_depth = b.value("trend_depth", o.trend_depth);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("benchmark config: ") + e.what());
  }
  if (!c.suite.empty()) o.suite = c.suite;
  if (c.seed) o.seed = *c.seed;
  if (c.replicates > 0) o.replicates = c.replicates;
  if (c.depth > 0) o.spectral_depth = c.depth;
  if (!c.wavelet.empty()) o.spectral_wavelet = c.wavelet;
  const BenchmarkReport rep = run_benchmark(o);
  RunManifest m;
  m.command = "benchmark";
  json report = rep.to_json();
  m.config = report.at("options");
  m.config["suite"] = o.suite;
  for (std::size_t col = 0; col < 3; ++col) {
    for (std::size_t r = 0; r < o.replicates; ++r) m.seeds.push_back(realisation_seed(o.seed, col, r));
  }
  const fs::path dir = c.out;
  m.add_output(dir, "report.json", report.dump(2) + "\n");
  m.add_output(dir, "report.csv", rep.to_csv());
  m.timings["total_seconds"] = timer.seconds();
  write_manifest(dir, m);
  std::cout << rep.suite << ": " << rep.metric << "\n";
  for (const auto& cell : rep.cells) {
    std::printf("  %-34s %-8s %12.5g", cell.row.c_str(), cell.column.c_str(), cell.value);
    if (cell.reference) std::printf("   reference %.5g", *cell.reference);
    std::printf("\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trend and evolutionary wavelet spectrum estimation for nonstationary series"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config_path, "JSON configuration file");
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--replicates", c.replicates, "Number of realisations");
  };
  auto add_estimation = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "Series CSV (one value column or time,value)");
    sub->add_option("--detrend", c.detrend, "none, diff1, diff2, seasonal:<L>");
    sub->add_option("--smoother", c.smoother, "mean:<half-width>, mean, ti, ti:<wavelet>, none");
    sub->add_option("--depth", c.depth, "Number of scales J1");
    sub->add_option("--wavelet", c.wavelet, "Spectral analysis wavelet (haar, epN, laN)");
    sub->add_flag("--pad-truncate", c.pad_truncate, "Keep the largest dyadic prefix of the input");
  };

  auto* simulate = app.add_subcommand("simulate", "Simulate T-LSW series");
  add_common(simulate);
  auto* spectrum = app.add_subcommand("estimate-spectrum", "Estimate the evolutionary wavelet spectrum");
  add_common(spectrum);
  add_estimation(spectrum);
  auto* trend = app.add_subcommand("estimate-trend", "Estimate the trend");
  add_common(trend);
  add_estimation(trend);
  trend->add_option("--spectrum", c.spectrum_path, "Spectrum CSV from estimate-spectrum");
  trend->add_flag("--auto", c.auto_spectrum, "Estimate the spectrum internally");
  auto* lacv_cmd = app.add_subcommand("lacv", "Local autocovariance");
  add_common(lacv_cmd);
  add_estimation(lacv_cmd);
  lacv_cmd->add_option("--spectrum", c.spectrum_path, "Spectrum CSV from estimate-spectrum");
  lacv_cmd->add_option("--max-lag", c.max_lag, "Largest lag (default 2^(J0-3))");
  auto* bench = app.add_subcommand("benchmark", "Monte-Carlo reproduction of the simulation tables");
  add_common(bench);
  bench->add_option("suite,--suite", c.suite,
                    "table1, table2_gauss, table3_exp, table5_seasonal, table6_overdiff, pathology");
  bench->add_option("--depth", c.depth, "Number of spectral scales J1");
  bench->add_option("--wavelet", c.wavelet, "Spectral analysis wavelet");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  if (bench->parsed() && bench->count("--replicates") == 0) c.replicates = 0;

  try {
    if (simulate->parsed()) return cmd_simulate(c);
    if (spectrum->parsed()) return cmd_estimate_spectrum(c);
    if (trend->parsed()) return cmd_estimate_trend(c);
    if (lacv_cmd->parsed()) return cmd_lacv(c);
    if (bench->parsed()) return cmd_benchmark(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
