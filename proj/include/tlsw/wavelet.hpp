#pragma once

// Daubechies filters, discrete non-decimated wavelets built by the cascade
// recursion, and their autocorrelation wavelets.
//
// Scales are addressed by positive level m = -j throughout the library:
// level 1 is the finest scale j = -1.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tlsw {

enum class Family { Haar, DaubExtremalPhase, DaubLeastAsymmetric };

struct WaveletFilter {
  Family family = Family::Haar;
  int vanishing_moments = 1;
  std::vector<double> low_pass;   // h_k, k = 0..N_h-1
  std::vector<double> high_pass;  // g_k = (-1)^k h_{N_h-1-k}

  std::size_t taps() const noexcept { return low_pass.size(); }

  /// Short name: "haar", "ep4", "la8", ...
  std::string name() const;
};

inline constexpr int kMaxVanishingMoments = 10;
inline constexpr int kMaxDepth = 20;

/// Builds the filter pair for a supported (family, vanishing moments).
/// Daubechies coefficients come from spectral factorisation of the
/// maximally-flat half-band polynomial; the least-asymmetric root choice
/// reproduces the standard published tables.
WaveletFilter make_filter(Family family, int vanishing_moments);

/// Parses "haar", "epN"/"dbN", "laN"/"symN".
WaveletFilter parse_filter(std::string_view name);

/// L_j = (2^{-j} - 1)(N_h - 1) + 1 for level m = -j.
std::size_t wavelet_length(std::size_t taps, int level);

class DiscreteWaveletSet {
 public:
  DiscreteWaveletSet(WaveletFilter filter, int max_depth);

  const WaveletFilter& filter() const noexcept { return filter_; }
  int max_depth() const noexcept { return max_depth_; }

  /// psi_{j,n}, n = 0..L_j-1, for level m = -j.
  std::span<const double> at(int level) const;

 private:
  WaveletFilter filter_;
  int max_depth_;
  std::vector<std::vector<double>> vectors_;
};

/// Psi_j(tau) = sum_k psi_{j,k} psi_{j,k-tau}, stored for |tau| <= L_j - 1.
class AutocorrWaveletSet {
 public:
  explicit AutocorrWaveletSet(const DiscreteWaveletSet& source);

  /// Builds straight from a filter without keeping the discrete wavelets.
  AutocorrWaveletSet(const WaveletFilter& filter, int max_depth);

  const WaveletFilter& filter() const noexcept { return filter_; }
  int max_depth() const noexcept { return max_depth_; }

  /// Largest |tau| with a stored value (L_j - 1).
  std::ptrdiff_t max_lag(int level) const;

  /// Psi_j(tau); zero outside the support.
  double value(int level, std::ptrdiff_t tau) const;

  /// Values for tau = -max_lag..max_lag.
  std::span<const double> values(int level) const;

 private:
  void build();

  WaveletFilter filter_;
  int max_depth_;
  std::vector<std::vector<double>> values_;
};

/// Energy centroid round(sum_n n psi_n^2) of a unit-norm filter; the
/// time offset at which a wavelet coefficient is attributed.
std::ptrdiff_t energy_centre(std::span<const double> psi);

/// Direct O(L^2) autocorrelation of a single vector; the reference the
/// factorised construction is checked against.
std::vector<double> autocorrelate(std::span<const double> v);

}  // namespace tlsw
