#pragma once

// Differencing, the periodic non-decimated wavelet transform and its
// basis-averaging inverse, and the raw wavelet periodogram.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tlsw/array.hpp"
#include "tlsw/wavelet.hpp"

namespace tlsw {

struct TimeOrigin {
  double start = 0.0;
  double interval = 1.0;
};

struct TimeSeries {
  std::vector<double> values;
  std::optional<TimeOrigin> origin;

  std::size_t size() const noexcept { return values.size(); }
};

bool is_dyadic(std::size_t n) noexcept;

/// log2(n) for a power of two; throws NonDyadicLength otherwise.
int dyadic_log2(std::size_t n);

/// n-th difference sum_k (-1)^k C(n,k) x_{t-k}. The first n outputs repeat
/// the first valid difference so that the length is preserved.
TimeSeries difference(const TimeSeries& x, int order);

/// n-th difference with indices taken modulo the length.
TimeSeries circular_difference(const TimeSeries& x, int order);

/// x_t - x_{t-L}, left-padded like difference().
TimeSeries seasonal_difference(const TimeSeries& x, int period);

struct NdwtCoefficients {
  WaveletFilter wavelet;
  ScaleTimeArray details;        // d_{j,k}, level 1..depth
  std::vector<double> scaling;   // smooth remainder at the coarsest level

  int depth() const noexcept { return static_cast<int>(details.levels()); }
  std::size_t length() const noexcept { return details.length(); }
};

/// Periodic a-trous transform. Equals d_{j,k} = sum_t x_t psi_{j,k-t} with
/// circular wrap.
NdwtCoefficients ndwt(std::span<const double> x, const WaveletFilter& filter, int depth);

/// Naive circular convolution with the cascade wavelets. Slow; kept as the
/// reference for ndwt().
ScaleTimeArray ndwt_direct(std::span<const double> x, const DiscreteWaveletSet& wavelets,
                           int depth);

/// Average-basis inverse of ndwt(). Exact for unmodified coefficients.
std::vector<double> ti_reconstruct(const NdwtCoefficients& c, std::span<const double> scaling);
std::vector<double> ti_reconstruct(const NdwtCoefficients& c);

/// Decimated periodic DWT. Level r holds T/2^r coefficients; coefficient k
/// equals the non-decimated coefficient at time 2^r k.
struct DwtCoefficients {
  WaveletFilter wavelet;
  std::vector<std::vector<double>> details;  // index r-1
  std::vector<double> scaling;
};

DwtCoefficients dwt(std::span<const double> x, const WaveletFilter& filter, int depth);
std::vector<double> idwt(const DwtCoefficients& c);

enum class PeriodogramSource { Raw, Differenced, Seasonal };

struct Periodogram {
  ScaleTimeArray values;  // I^j_k
  PeriodogramSource source = PeriodogramSource::Raw;
  int source_parameter = 0;  // difference order or seasonal period
  bool smoothed = false;
};

Periodogram periodogram(const NdwtCoefficients& c, PeriodogramSource source = PeriodogramSource::Raw,
                        int source_parameter = 0);

}  // namespace tlsw
