#pragma once

// Trend estimation by wavelet thresholding with coefficient-wise thresholds
// derived from a spectrum estimate.

#include <cstddef>
#include <string>
#include <vector>

#include "tlsw/array.hpp"
#include "tlsw/operators.hpp"
#include "tlsw/spectral.hpp"
#include "tlsw/transforms.hpp"

namespace tlsw {

enum class ThresholdRule { Hard, Soft };
enum class TrendTransform { TI, DWT };

struct TrendConfig {
  std::string wavelet = "la4";  // psi^1
  int depth = 0;                // thresholded scales; 0 selects floor(0.7 log2 T)
  ThresholdRule rule = ThresholdRule::Hard;
  TrendTransform transform = TrendTransform::TI;
};

struct TrendEstimate {
  std::vector<double> mu_hat;
  ScaleTimeArray variances;  // sigma^2_{r,s} after repair
  std::size_t negatives_repaired = 0;
  std::size_t coefficients_kept = 0;
  TrendConfig config;  // with depth resolved
};

struct RepairedVariances {
  ScaleTimeArray values;
  std::size_t repaired = 0;
};

/// Replaces each non-positive entry by the nearest positive entry of the same
/// row, looking at the smaller offset first and the earlier index on ties.
/// Throws AllNegativeRow when a row has no positive entry.
std::size_t repair_nonpositive(ScaleTimeArray& variances);

/// sigma^2_{r,s} = sum_l C_{rl} S_l(s/T) for r = 1..depth, then repaired.
RepairedVariances coefficient_variance(const ScaleTimeArray& spectrum, const OperatorMatrix& cross,
                                       int depth);

/// Cross matrix between the trend wavelet (rows) and the spectral wavelet
/// (columns), sized to cover both depths.
OperatorMatrix trend_cross_matrix(const std::string& trend_wavelet,
                                  const std::string& spectral_wavelet, int dim);

TrendEstimate estimate_trend(const TimeSeries& x, const SpectrumEstimate& spectrum,
                             const TrendConfig& cfg);

/// Thresholds lambda_{r,s} = sqrt(variances(r,s)) sqrt(2 log T); coarser scales
/// and the scaling remainder pass through unchanged.
TrendEstimate estimate_trend_with_variances(const TimeSeries& x, const ScaleTimeArray& variances,
                                            const TrendConfig& cfg);

/// Universal-threshold baseline with sigma_r the MAD of the scale-r
/// coefficients, constant in time.
TrendEstimate estimate_trend_global_baseline(const TimeSeries& x, const TrendConfig& cfg);

int resolve_trend_depth(const TrendConfig& cfg, std::size_t length);

}  // namespace tlsw
