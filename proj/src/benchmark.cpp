#include "tlsw/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "tlsw/error.hpp"
#include "tlsw/io.hpp"
#include "tlsw/random.hpp"
#include "tlsw/simulation.hpp"
#include "tlsw/stats.hpp"
#include "tlsw/spectral.hpp"
#include "tlsw/trend.hpp"

namespace tlsw {
namespace {

using nlohmann::json;

const std::vector<std::string> kSpectra = {"S1", "S2", "S3"};

struct TrendRow {
  std::string label;
  std::string trend;
  bool seasonal = false;
  bool time_varying = false;
};

const std::vector<TrendRow> kTrendRows = {
    {"Linear", "linear"}, {"Sine", "sine"}, {"Logistic", "logistic"},
    {"Piece. Quad.", "piecewise_quadratic"}};

// Reference values of the simulation study, keyed by row then spectrum.
using ReferenceTable = std::map<std::string, std::vector<double>>;

const ReferenceTable kTable1 = {{"None", {3.13, 4.88, 1.87}},
                            {"Linear", {3.32, 4.63, 2.76}},
                            {"Sine", {3.32, 4.63, 2.76}},
                            {"Logistic", {3.32, 4.63, 2.76}},
                            {"Piece. Quad.", {3.32, 4.67, 2.79}}};
const ReferenceTable kTable2 = {{"Linear", {0.024, 0.030, 0.028}},
                            {"Sine", {0.022, 0.026, 0.022}},
                            {"Logistic", {0.023, 0.033, 0.027}},
                            {"Piece. Quad.", {0.022, 0.032, 0.028}}};
const ReferenceTable kTable3 = {{"Linear", {0.030, 0.035, 0.040}},
                            {"Sine", {0.027, 0.033, 0.037}},
                            {"Logistic", {0.030, 0.036, 0.044}},
                            {"Piece. Quad.", {0.031, 0.038, 0.045}}};
const ReferenceTable kTable5 = {{"Seasonal + No Trend", {4.76, 8.44, 2.54}},
                            {"Seasonal + Linear", {4.76, 8.44, 2.54}},
                            {"Seasonal + Sine", {4.76, 8.43, 2.54}},
                            {"Seasonal + Logistic", {4.76, 8.44, 2.54}},
                            {"Seasonal + Piece. Quad.", {4.79, 8.46, 2.55}},
                            {"Time-Varying Seasonal + No Trend", {4.76, 8.43, 2.53}}};
const std::vector<double> kTable6 = {1.562, 1.251, 1.461};

std::optional<double> reference_value(const ReferenceTable& table, const std::string& row, std::size_t col) {
  const auto it = table.find(row);
  if (it == table.end()) return std::nullopt;
  return it->second[col];
}

SimConfig scenario(const BenchmarkOptions& o, std::size_t column, const TrendRow& row,
                   Innovations innov, std::uint64_t seed) {
  SimConfig cfg;
  cfg.length = o.length;
  cfg.generator = o.generator;
  cfg.spectrum = builtin_spectrum(kSpectra[column]);
  cfg.trend = builtin_trend(row.trend);
  if (row.seasonal) {
    SeasonalSpec s;
    s.time_varying = row.time_varying;
    cfg.trend.seasonal = s;
  }
  cfg.innovations = innov;
  cfg.seed = seed;
  return cfg;
}

struct SpectrumError {
  double full = 0.0;
  double interior = 0.0;
};

struct Margin {
  std::size_t head = 0;
  std::size_t tail = 0;
};

/// Per-level span of coefficients whose wavelet support wraps around the
/// series, split about the energy centre of psi_j.
std::vector<Margin> boundary_margins(const BenchmarkOptions& o) {
  const DiscreteWaveletSet wavelets(parse_filter(o.spectral_wavelet), o.spectral_depth);
  std::vector<Margin> out;
  for (int lev = 1; lev <= o.spectral_depth; ++lev) {
    const auto psi = wavelets.at(lev);
    const auto head = static_cast<std::size_t>(energy_centre(psi));
    out.push_back({head, psi.size() - 1 - head});
  }
  return out;
}

SpectrumError spectrum_mse(const ScaleTimeArray& estimate, const ScaleTimeArray& truth,
                           const std::vector<Margin>& margins) {
  SpectrumError e;
  std::size_t n_interior = 0;
  const std::size_t n = estimate.length();
  for (std::size_t lev = 1; lev <= estimate.levels(); ++lev) {
    const Margin& m = margins[lev - 1];
    for (std::size_t k = 0; k < n; ++k) {
      const double d = estimate(lev, k) - truth(lev, k);
      e.full += d * d;
      if (k >= m.head && k + m.tail < n) {
        e.interior += d * d;
        ++n_interior;
      }
    }
  }
  e.full /= static_cast<double>(estimate.levels() * n);
  e.interior = n_interior > 0 ? e.interior / static_cast<double>(n_interior) : 0.0;
  return e;
}

/// Mean over realisations of the corrected unsmoothed estimate.
ScaleTimeArray averaged_estimate(const BenchmarkOptions& o, std::size_t column,
                                 const TrendRow& row, const Detrend& detrend,
                                 const Smoother& smoother = Smoother::none()) {
  SpectralConfig sc;
  sc.wavelet = o.spectral_wavelet;
  sc.depth = o.spectral_depth;
  sc.detrend = detrend;
  sc.smoother = smoother;
  const SpectralEstimator estimator(sc, o.length);
  std::vector<ScaleTimeArray> runs(o.replicates);
  parallel_for(o.replicates, worker_count(o.threads), [&](std::size_t r) {
    const SimConfig cfg =
        scenario(o, column, row, Innovations::Gaussian, realisation_seed(o.seed, column, r));
    runs[r] = estimator.estimate(simulate_lsw(cfg)).values;
  });
  ScaleTimeArray sum(static_cast<std::size_t>(o.spectral_depth), o.length);
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < sum.flat().size(); ++i) sum.flat()[i] += run.flat()[i];
  }
  for (double& v : sum.flat()) v /= static_cast<double>(o.replicates);
  return sum;
}

ScaleTimeArray truth_grid(const BenchmarkOptions& o, std::size_t column) {
  return builtin_spectrum(kSpectra[column]).grid(o.spectral_depth, o.length);
}

BenchmarkCell spectrum_cell(const BenchmarkOptions& o, std::size_t column, const TrendRow& row,
                            const Detrend& detrend, std::optional<double> reference,
                            const Smoother& smoother = Smoother::none()) {
  const ScaleTimeArray avg = averaged_estimate(o, column, row, detrend, smoother);
  const SpectrumError e = spectrum_mse(avg, truth_grid(o, column), boundary_margins(o));
  BenchmarkCell c{row.label, kSpectra[column], o.replicates, 1e3 * e.full, 0.0, reference, {}};
  c.extra = {{"mse_x1e3_full", 1e3 * e.full},
             {"mse_x1e3_interior", 1e3 * e.interior},
             {"detrend", detrend.to_string()}};
  return c;
}

void spectrum_table(BenchmarkReport& rep, const std::vector<TrendRow>& rows, const ReferenceTable& reference,
                    const Detrend& detrend, const Smoother& smoother = Smoother::none()) {
  for (const auto& row : rows) {
    for (std::size_t col = 0; col < kSpectra.size(); ++col) {
      rep.cells.push_back(spectrum_cell(rep.options, col, row, detrend,
                                        reference_value(reference, row.label, col), smoother));
    }
  }
}

void run_table1(BenchmarkReport& rep) {
  rep.metric = "averaged-spectrum MSE x 1e3";
  spectrum_table(rep, {{"None", "zero"}}, kTable1, Detrend::none());
  spectrum_table(rep, kTrendRows, kTable1, Detrend::diff(1));
}

void run_table5(BenchmarkReport& rep) {
  rep.metric = "averaged-spectrum MSE x 1e3, lag-12 differencing";
  std::vector<TrendRow> rows = {{"Seasonal + No Trend", "zero", true, false},
                                {"Seasonal + Linear", "linear", true, false},
                                {"Seasonal + Sine", "sine", true, false},
                                {"Seasonal + Logistic", "logistic", true, false},
                                {"Seasonal + Piece. Quad.", "piecewise_quadratic", true, false},
                                {"Time-Varying Seasonal + No Trend", "zero", true, true}};
  spectrum_table(rep, rows, kTable5, Detrend::seasonal(12));
}

void run_table6(BenchmarkReport& rep) {
  rep.metric = "relative MSE, second / first differences";
  const BenchmarkOptions& o = rep.options;
  const std::vector<Margin> margins = boundary_margins(o);
  for (const auto& row : kTrendRows) {
    for (std::size_t col = 0; col < kSpectra.size(); ++col) {
      const ScaleTimeArray truth = truth_grid(o, col);
      const SpectrumError e1 = spectrum_mse(averaged_estimate(o, col, row, Detrend::diff(1)), truth, margins);
      const SpectrumError e2 = spectrum_mse(averaged_estimate(o, col, row, Detrend::diff(2)), truth, margins);
      BenchmarkCell c{row.label, kSpectra[col], o.replicates, e2.interior / e1.interior, 0.0,
                      kTable6[col], {}};
      c.extra = {{"mse_x1e3_diff1_interior", 1e3 * e1.interior},
                 {"mse_x1e3_diff2_interior", 1e3 * e2.interior},
                 {"ratio_full", e2.full / e1.full},
                 {"margin_coarsest", margins.back().head + margins.back().tail}};
      rep.cells.push_back(std::move(c));
    }
  }
}

double sample_sd(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

void run_trend_table(BenchmarkReport& rep, Innovations innov, const ReferenceTable& reference) {
  rep.metric = "trend MSE";
  const BenchmarkOptions& o = rep.options;
  SpectralConfig sc;
  sc.wavelet = o.spectral_wavelet;
  sc.depth = o.spectral_depth;
  sc.detrend = Detrend::diff(1);
  sc.smoother = Smoother::running_mean(o.trend_half_width);
  TrendConfig tc;
  tc.wavelet = o.trend_wavelet;
  tc.depth = o.trend_depth;
  const SpectralEstimator estimator(sc, o.length);
  for (const auto& row : kTrendRows) {
    for (std::size_t col = 0; col < kSpectra.size(); ++col) {
      std::vector<double> lsw(o.replicates), base(o.replicates);
      std::vector<std::size_t> repaired(o.replicates);
      parallel_for(o.replicates, worker_count(o.threads), [&](std::size_t r) {
        const SimConfig cfg = scenario(o, col, row, innov, realisation_seed(o.seed, col, r));
        const TimeSeries x = simulate_lsw(cfg);
        const std::vector<double> mu = simulated_mean(cfg);
        const TrendEstimate t = estimate_trend(x, estimator.estimate(x), tc);
        const TrendEstimate b = estimate_trend_global_baseline(x, tc);
        double e1 = 0.0, e2 = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
          e1 += (t.mu_hat[k] - mu[k]) * (t.mu_hat[k] - mu[k]);
          e2 += (b.mu_hat[k] - mu[k]) * (b.mu_hat[k] - mu[k]);
        }
        lsw[r] = e1 / static_cast<double>(x.size());
        base[r] = e2 / static_cast<double>(x.size());
        repaired[r] = t.negatives_repaired;
      });
      const double m = mean_of(lsw);
      const double mb = mean_of(base);
      std::size_t total_repaired = 0;
      for (auto n : repaired) total_repaired += n;
      BenchmarkCell c{row.label, kSpectra[col], o.replicates, m, sample_sd(lsw, m),
                      reference_value(reference, row.label, col), {}};
      c.extra = {{"baseline_mean", mb},
                 {"baseline_sd", sample_sd(base, mb)},
                 {"negatives_repaired", total_repaired}};
      rep.cells.push_back(std::move(c));
    }
  }
}

void run_pathology(BenchmarkReport& rep) {
  rep.metric = "mean differenced periodogram and classical correction, haar_ma1";
  const BenchmarkOptions& o = rep.options;
  const int depth = dyadic_log2(o.length);
  SpectralConfig sc;
  sc.wavelet = "haar";
  sc.depth = depth;
  sc.detrend = Detrend::diff(1);
  sc.smoother = Smoother::none();
  sc.boundary = Boundary::Periodic;
  sc.centred = false;
  const SpectralEstimator estimator(sc, o.length);
  const AutocorrWaveletSet acw(parse_filter("haar"), depth);
  const OperatorMatrix a_inv = invert(inner_product_matrix(acw, depth, 0));
  std::vector<ScaleTimeArray> periodograms(o.replicates);
  parallel_for(o.replicates, worker_count(o.threads), [&](std::size_t r) {
    SimConfig cfg;
    cfg.length = o.length;
    cfg.generator = "haar";
    cfg.spectrum = builtin_spectrum("haar_ma1");
    cfg.seed = realisation_seed(o.seed, 0, r);
    periodograms[r] = estimator.raw_periodogram(simulate_lsw(cfg)).values;
  });
  ScaleTimeArray mean_p(static_cast<std::size_t>(depth), o.length);
  for (const auto& p : periodograms) {
    for (std::size_t i = 0; i < mean_p.flat().size(); ++i) mean_p.flat()[i] += p.flat()[i];
  }
  for (double& v : mean_p.flat()) v /= static_cast<double>(o.replicates);
  const ScaleTimeArray classical = expected_periodogram(mean_p, a_inv);
  for (int lev = 1; lev <= std::min(depth, 4); ++lev) {
    const double expected = lev == 1 ? 5.0 : 3.0 * std::ldexp(1.0, 1 - lev);
    rep.cells.push_back({"periodogram", "level " + std::to_string(lev), o.replicates,
                         mean(mean_p.level(static_cast<std::size_t>(lev))), 0.0, expected, {}});
  }
  rep.cells.push_back({"classical A^-1", "level 2", o.replicates, mean(classical.level(2)), 0.0,
                       -0.79, {}});
}

}  // namespace

const std::vector<std::string>& benchmark_suites() {
  static const std::vector<std::string> suites = {"table1",          "table2_gauss",    "table3_exp",
                                                  "table5_seasonal", "table6_overdiff", "pathology"};
  return suites;
}

std::uint64_t realisation_seed(std::uint64_t base, std::size_t column, std::size_t r) {
  return substream_seed(substream_seed(base, column), r);
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TLSW_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

BenchmarkReport run_benchmark(const BenchmarkOptions& options) {
  const auto& suites = benchmark_suites();
  if (std::find(suites.begin(), suites.end(), options.suite) == suites.end()) {
    fail(ErrorCode::ConfigError, "unknown benchmark suite '" + options.suite + "'");
  }
  if (options.replicates < 1) fail(ErrorCode::ConfigError, "replicates must be at least 1");
  BenchmarkReport rep;
  rep.suite = options.suite;
  rep.options = options;
  const auto start = std::chrono::steady_clock::now();
  if (options.suite == "table1") run_table1(rep);
  if (options.suite == "table2_gauss") run_trend_table(rep, Innovations::Gaussian, kTable2);
  if (options.suite == "table3_exp") run_trend_table(rep, Innovations::ExponentialCentred, kTable3);
  if (options.suite == "table5_seasonal") run_table5(rep);
  if (options.suite == "table6_overdiff") run_table6(rep);
  if (options.suite == "pathology") run_pathology(rep);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

const BenchmarkCell& BenchmarkReport::cell(const std::string& row, const std::string& column) const {
  for (const auto& c : cells) {
    if (c.row == row && c.column == column) return c;
  }
  fail(ErrorCode::InvalidArgument, "no cell (" + row + ", " + column + ") in " + suite);
}

json BenchmarkReport::to_json() const {
  json cell_list = json::array();
  for (const auto& c : cells) {
    json j = {{"row", c.row}, {"column", c.column}, {"count", c.count}, {"value", c.value}, {"sd", c.sd}};
    j["reference"] = c.reference ? json(*c.reference) : json(nullptr);
    j["extra"] = c.extra;
    cell_list.push_back(std::move(j));
  }
  const auto& o = options;
  return {{"suite", suite},
          {"metric", metric},
          {"options",
           {{"replicates", o.replicates},
            {"seed", o.seed},
            {"length", o.length},
            {"generator", o.generator},
            {"spectral_wavelet", o.spectral_wavelet},
            {"spectral_depth", o.spectral_depth},
            {"trend_half_width", o.trend_half_width},
            {"trend_wavelet", o.trend_wavelet},
            {"trend_depth", o.trend_depth}}},
          {"seed_rule", "substream_seed(substream_seed(seed, column), realisation)"},
          {"cells", cell_list}};
}

std::string BenchmarkReport::to_csv() const {
  const bool with_sd = options.replicates > 1 &&
                       std::any_of(cells.begin(), cells.end(), [](const auto& c) { return c.sd != 0.0; });
  std::string out = with_sd ? "row,column,count,value,sd,reference\n" : "row,column,count,value,reference\n";
  for (const auto& c : cells) {
    out += '"' + c.row + "\"," + c.column + ',' + std::to_string(c.count) + ',' + format_double(c.value);
    if (with_sd) out += ',' + format_double(c.sd);
    out += ',' + (c.reference ? format_double(*c.reference) : std::string()) + '\n';
  }
  return out;
}

}  // namespace tlsw
