#pragma once

// Monte-Carlo reproduction of the simulation-study tables.

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace tlsw {

struct BenchmarkOptions {
  std::string suite = "table1";
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: TLSW_THREADS, else hardware concurrency
  std::size_t length = 1024;
  std::string generator = "ep4";
  std::string spectral_wavelet = "ep4";
  int spectral_depth = 7;
  std::size_t trend_half_width = 64;  // running-mean W of the spectrum used for thresholds
  std::string trend_wavelet = "la4";
  int trend_depth = 6;
};

struct BenchmarkCell {
  std::string row;
  std::string column;
  std::size_t count = 0;
  double value = 0.0;  // table metric
  double sd = 0.0;     // across realisations; 0 for metrics of averaged estimates
  std::optional<double> reference;
  nlohmann::json extra = nlohmann::json::object();
};

struct BenchmarkReport {
  std::string suite;
  std::string metric;
  BenchmarkOptions options;
  std::vector<BenchmarkCell> cells;
  double elapsed_seconds = 0.0;

  const BenchmarkCell& cell(const std::string& row, const std::string& column) const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// table1, table2_gauss, table3_exp, table5_seasonal, table6_overdiff, pathology
const std::vector<std::string>& benchmark_suites();

BenchmarkReport run_benchmark(const BenchmarkOptions& options);

/// Seed of realisation r in scenario column c; independent of the trend row
/// so every row of a table sees the same noise.
std::uint64_t realisation_seed(std::uint64_t base, std::size_t column, std::size_t r);

/// requested if non-zero, else TLSW_THREADS, else hardware concurrency.
unsigned worker_count(unsigned requested);

/// Runs body(i) for i in [0, n) on a pool; rethrows the first failure.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace tlsw
