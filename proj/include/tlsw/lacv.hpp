#pragma once

#include <cstddef>
#include <vector>

#include "tlsw/spectral.hpp"
#include "tlsw/wavelet.hpp"

namespace tlsw {

struct LacvEstimate {
  std::size_t length = 0;
  std::size_t max_lag = 0;
  int scales = 0;                 // J0
  std::vector<double> values;     // row-major (time, lag), lag = 0..max_lag
  std::size_t negative_variance = 0;

  double operator()(std::size_t t, std::size_t lag) const { return values[t * (max_lag + 1) + lag]; }
};

/// 2^{J0-3}, at least 1.
std::size_t default_max_lag(int scales);

/// c_hat(k/T, tau) = sum_{j=1..J0} S_hat_j(k/T) Psi_j(tau). J0 = 0 uses every
/// scale of the estimate.
LacvEstimate lacv(const ScaleTimeArray& spectrum, const AutocorrWaveletSet& acw, int scales,
                  std::size_t max_lag);
LacvEstimate lacv(const SpectrumEstimate& spectrum, const AutocorrWaveletSet& acw, int scales = 0);

std::vector<double> local_variance(const LacvEstimate& c);

/// c_hat(z, tau) / max(c_hat(z, 0), floor), same layout as the estimate.
std::vector<double> local_acf(const LacvEstimate& c, double floor);

/// 1e-8 times the largest local variance (1e-300 if none is positive).
double default_acf_floor(const LacvEstimate& c);

}  // namespace tlsw
