#include "tlsw/lacv.hpp"

#include <algorithm>
#include <string>

#include "tlsw/error.hpp"

namespace tlsw {

std::size_t default_max_lag(int scales) {
  return scales <= 3 ? 1 : std::size_t{1} << (scales - 3);
}

LacvEstimate lacv(const ScaleTimeArray& spectrum, const AutocorrWaveletSet& acw, int scales,
                  std::size_t max_lag) {
  const int available = static_cast<int>(spectrum.levels());
  if (scales == 0) scales = available;
  if (scales < 1 || scales > available || scales > acw.max_depth()) {
    fail(ErrorCode::DepthExceeded, "J0 = " + std::to_string(scales) + " exceeds the " +
                                       std::to_string(std::min(available, acw.max_depth())) +
                                       " available scales");
  }
  LacvEstimate out;
  out.length = spectrum.length();
  out.max_lag = max_lag;
  out.scales = scales;
  out.values.assign(out.length * (max_lag + 1), 0.0);
  for (int lev = 1; lev <= scales; ++lev) {
    const auto row = spectrum.level(static_cast<std::size_t>(lev));
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
      const double psi = acw.value(lev, static_cast<std::ptrdiff_t>(tau));
      if (psi == 0.0) continue;
      for (std::size_t t = 0; t < out.length; ++t) out.values[t * (max_lag + 1) + tau] += row[t] * psi;
    }
  }
  for (std::size_t t = 0; t < out.length; ++t) {
    if (out(t, 0) < 0.0) ++out.negative_variance;
  }
  return out;
}

LacvEstimate lacv(const SpectrumEstimate& spectrum, const AutocorrWaveletSet& acw, int scales) {
  const int j0 = scales == 0 ? spectrum.depth() : scales;
  return lacv(spectrum.values, acw, j0, default_max_lag(j0));
}

std::vector<double> local_variance(const LacvEstimate& c) {
  std::vector<double> out(c.length);
  for (std::size_t t = 0; t < c.length; ++t) out[t] = c(t, 0);
  return out;
}

double default_acf_floor(const LacvEstimate& c) {
  double top = 0.0;
  for (std::size_t t = 0; t < c.length; ++t) top = std::max(top, c(t, 0));
  return top > 0.0 ? 1e-8 * top : 1e-300;
}

std::vector<double> local_acf(const LacvEstimate& c, double floor) {
  if (!(floor > 0.0)) fail(ErrorCode::InvalidArgument, "ACF floor must be positive");
  std::vector<double> out(c.values.size());
  const std::size_t width = c.max_lag + 1;
  for (std::size_t t = 0; t < c.length; ++t) {
    const double denom = std::max(c(t, 0), floor);
    for (std::size_t tau = 0; tau < width; ++tau) out[t * width + tau] = c(t, tau) / denom;
  }
  return out;
}

}  // namespace tlsw
