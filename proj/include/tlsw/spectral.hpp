#pragma once

// Evolutionary wavelet spectrum estimation: detrend, non-decimated
// periodogram, smoothing, and correction by the matching operator inverse.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tlsw/array.hpp"
#include "tlsw/operators.hpp"
#include "tlsw/transforms.hpp"
#include "tlsw/wavelet.hpp"

namespace tlsw {

struct Detrend {
  enum class Kind { None, Difference, Seasonal };
  Kind kind = Kind::Difference;
  int parameter = 1;  // difference order or seasonal period

  static Detrend none() { return {Kind::None, 0}; }
  static Detrend diff(int order) { return {Kind::Difference, order}; }
  static Detrend seasonal(int period) { return {Kind::Seasonal, period}; }

  /// "none", "diffN", "seasonal:L"
  static Detrend parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Detrend&, const Detrend&) = default;
};

struct Smoother {
  enum class Kind { None, RunningMean, TiThreshold };
  Kind kind = Kind::RunningMean;
  std::size_t half_width = 0;  // running mean W; 0 selects T/8
  std::string wavelet = "haar";  // psi' for TI thresholding
  int depth = 0;                 // TI levels; 0 selects log2(T) - 3

  static Smoother none() { return {Kind::None, 0, "haar", 0}; }
  static Smoother running_mean(std::size_t w) { return {Kind::RunningMean, w, "haar", 0}; }
  static Smoother ti(std::string wavelet = "haar") { return {Kind::TiThreshold, 0, std::move(wavelet), 0}; }

  /// "none", "mean" (W = T/8), "mean:W", "ti", "ti:<wavelet>"
  static Smoother parse(std::string_view text);
  std::string to_string() const;
};

inline constexpr double kDefaultBeta = 0.7;
inline constexpr std::size_t kMinSpectralLength = 64;

enum class Boundary { Periodic, Reflect };

Boundary parse_boundary(std::string_view text);
std::string to_string(Boundary boundary);

struct SpectralConfig {
  std::string wavelet = "ep4";  // psi^0
  int depth = 0;                // J1; 0 selects floor(beta log2 T)
  double beta = kDefaultBeta;
  Detrend detrend;
  Smoother smoother;
  // Reflect analyses x_0..x_{T-1}, x_{T-1}..x_0 and keeps the first T
  // coefficients; seasonal differencing always runs periodically.
  Boundary boundary = Boundary::Reflect;
  bool centred = true;  // periodogram row j read at time k + centre(psi_j)
};

int default_depth(std::size_t length, double beta = kDefaultBeta);

struct SpectrumEstimate {
  ScaleTimeArray values;  // S_hat_j(k/T), level 1..J1
  SpectralConfig config;  // with depth and smoother width resolved
  OperatorMatrix correction;
  double condition_number = 0.0;
  std::vector<std::size_t> negative_counts;  // per level

  int depth() const noexcept { return static_cast<int>(values.levels()); }
  std::size_t length() const noexcept { return values.length(); }
};

/// Centred circular moving average of width 2W+1 per scale. A window at
/// least as wide as the series averages each row once.
Periodogram smooth_running_mean(const Periodogram& p, std::size_t half_width);

/// Per-scale TI hard thresholding with lambda = sigma_j log(T), sigma_j the
/// MAD of the finest smoothing coefficients.
Periodogram smooth_ti_threshold(const Periodogram& p, const WaveletFilter& wavelet,
                                int depth = 0);

/// A for no detrending, D^n for n-th differences, D^L for lag-L differences.
OperatorMatrix correction_matrix(const AutocorrWaveletSet& acw, int dim, const Detrend& detrend);

/// sum_l M_{jl} S_l(k/T) for every k.
ScaleTimeArray expected_periodogram(const ScaleTimeArray& spectrum, const OperatorMatrix& m);

/// Detrended series as used by the spectral pipeline.
TimeSeries apply_detrend(const TimeSeries& x, const Detrend& detrend);

/// Reuses the autocorrelation wavelets and the inverted correction matrix
/// across series of the same length.
class SpectralEstimator {
 public:
  SpectralEstimator(SpectralConfig config, std::size_t length);

  SpectrumEstimate estimate(const TimeSeries& x) const;

  /// Corrected but unsmoothed estimate.
  SpectrumEstimate estimate_raw(const TimeSeries& x) const;

  /// Detrended, squared NDWT coefficients (before smoothing), aligned and
  /// cut back to the series length.
  Periodogram raw_periodogram(const TimeSeries& x) const;

  const SpectralConfig& config() const noexcept { return config_; }
  const AutocorrWaveletSet& autocorrelation() const noexcept { return *acw_; }
  const OperatorMatrix& correction() const noexcept { return correction_; }
  const OperatorMatrix& inverse() const noexcept { return inverse_; }

  /// True when the series is reflected before detrending.
  bool reflects() const noexcept;

 private:
  SpectrumEstimate finish(Periodogram p, const SpectralConfig& cfg) const;

  SpectralConfig config_;
  std::size_t length_;
  WaveletFilter filter_;
  std::shared_ptr<const AutocorrWaveletSet> acw_;
  std::vector<std::ptrdiff_t> shifts_;
  OperatorMatrix correction_;
  OperatorMatrix inverse_;
  double condition_ = 0.0;
};

SpectrumEstimate estimate_ews(const TimeSeries& x, const SpectralConfig& cfg);

}  // namespace tlsw
