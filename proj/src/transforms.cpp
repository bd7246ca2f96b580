#include "tlsw/transforms.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tlsw/error.hpp"
#include "tlsw/kernels.hpp"

namespace tlsw {
namespace {

void check_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "series contains non-finite values");
  }
}

int checked_depth(std::size_t n, int depth) {
  const int max_depth = dyadic_log2(n);
  if (depth < 1 || depth > max_depth) {
    fail(ErrorCode::DepthExceeded, "depth " + std::to_string(depth) + " outside 1.." +
                                       std::to_string(max_depth) + " for length " +
                                       std::to_string(n));
  }
  return max_depth;
}

TimeSeries pad_left(const TimeSeries& x, std::vector<double> body, std::size_t lost) {
  TimeSeries out;
  out.origin = x.origin;
  out.values.assign(x.size(), body.front());
  std::copy(body.begin(), body.end(), out.values.begin() + static_cast<std::ptrdiff_t>(lost));
  return out;
}

}  // namespace

bool is_dyadic(std::size_t n) noexcept { return n >= 2 && std::has_single_bit(n); }

int dyadic_log2(std::size_t n) {
  if (!is_dyadic(n)) {
    fail(ErrorCode::NonDyadicLength, "length " + std::to_string(n) + " is not a power of two");
  }
  return std::countr_zero(n);
}

TimeSeries difference(const TimeSeries& x, int order) {
  if (order < 1) fail(ErrorCode::UnsupportedOrder, "difference order must be at least 1");
  const auto n = static_cast<std::size_t>(order);
  if (x.size() <= n) {
    fail(ErrorCode::SeriesTooShort, "need more than " + std::to_string(order) + " samples");
  }
  std::vector<double> body(x.values);
  for (std::size_t pass = 0; pass < n; ++pass) {
    for (std::size_t t = body.size() - 1; t > 0; --t) body[t] -= body[t - 1];
    body.erase(body.begin());
  }
  return pad_left(x, std::move(body), n);
}

TimeSeries circular_difference(const TimeSeries& x, int order) {
  if (order < 1) fail(ErrorCode::UnsupportedOrder, "difference order must be at least 1");
  const auto n = static_cast<std::size_t>(order);
  if (x.size() <= n) {
    fail(ErrorCode::SeriesTooShort, "need more than " + std::to_string(order) + " samples");
  }
  TimeSeries out = x;
  std::vector<double> prev(x.size());
  for (std::size_t pass = 0; pass < n; ++pass) {
    prev = out.values;
    for (std::size_t t = 0; t < prev.size(); ++t) {
      out.values[t] = prev[t] - prev[(t + prev.size() - 1) % prev.size()];
    }
  }
  return out;
}

TimeSeries seasonal_difference(const TimeSeries& x, int period) {
  if (period < 1) fail(ErrorCode::InvalidArgument, "seasonal period must be at least 1");
  const auto lag = static_cast<std::size_t>(period);
  if (x.size() <= lag) {
    fail(ErrorCode::SeriesTooShort, "need more than " + std::to_string(period) + " samples");
  }
  std::vector<double> body(x.size() - lag);
  for (std::size_t t = lag; t < x.size(); ++t) body[t - lag] = x.values[t] - x.values[t - lag];
  return pad_left(x, std::move(body), lag);
}

NdwtCoefficients ndwt(std::span<const double> x, const WaveletFilter& filter, int depth) {
  checked_depth(x.size(), depth);
  check_finite(x);
  const auto& k = kernels::active();
  NdwtCoefficients out{filter, ScaleTimeArray(static_cast<std::size_t>(depth), x.size()), {}};
  std::vector<double> smooth(x.begin(), x.end());
  std::vector<double> next(x.size());
  std::size_t stride = 1;
  for (int level = 1; level <= depth; ++level) {
    k.circular_filter(smooth, filter.high_pass, stride, out.details.level(level));
    k.circular_filter(smooth, filter.low_pass, stride, next);
    smooth.swap(next);
    stride *= 2;
  }
  out.scaling = std::move(smooth);
  return out;
}

ScaleTimeArray ndwt_direct(std::span<const double> x, const DiscreteWaveletSet& wavelets,
                           int depth) {
  checked_depth(x.size(), depth);
  if (depth > wavelets.max_depth()) {
    fail(ErrorCode::DepthExceeded, "wavelet set is shallower than the requested depth");
  }
  const std::size_t n = x.size();
  ScaleTimeArray out(static_cast<std::size_t>(depth), n);
  for (int level = 1; level <= depth; ++level) {
    const auto psi = wavelets.at(level);
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t m = 0; m < psi.size(); ++m) acc += psi[m] * x[(k + n - m % n) % n];
      out(static_cast<std::size_t>(level), k) = acc;
    }
  }
  return out;
}

std::vector<double> ti_reconstruct(const NdwtCoefficients& c, std::span<const double> scaling) {
  if (scaling.size() != c.length()) {
    fail(ErrorCode::ShapeMismatch, "scaling remainder length " + std::to_string(scaling.size()) +
                                       " does not match " + std::to_string(c.length()));
  }
  const auto& k = kernels::active();
  std::vector<double> smooth(scaling.begin(), scaling.end());
  std::vector<double> detail(c.length());
  for (int level = c.depth(); level >= 1; --level) {
    const std::size_t stride = std::size_t{1} << (level - 1);
    std::vector<double> coarse(smooth);
    k.circular_correlate(coarse, c.wavelet.low_pass, stride, smooth);
    k.circular_correlate(c.details.level(level), c.wavelet.high_pass, stride, detail);
    k.scaled_sum(0.5, detail, smooth);
  }
  return smooth;
}

std::vector<double> ti_reconstruct(const NdwtCoefficients& c) {
  return ti_reconstruct(c, c.scaling);
}

DwtCoefficients dwt(std::span<const double> x, const WaveletFilter& filter, int depth) {
  checked_depth(x.size(), depth);
  check_finite(x);
  DwtCoefficients out{filter, {}, {x.begin(), x.end()}};
  const std::size_t taps = filter.taps();
  for (int level = 1; level <= depth; ++level) {
    const std::size_t n = out.scaling.size();
    const std::size_t half = n / 2;
    std::vector<double> approx(half, 0.0);
    std::vector<double> detail(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
      for (std::size_t m = 0; m < taps; ++m) {
        const double v = out.scaling[(2 * k + n - m % n) % n];
        approx[k] += filter.low_pass[m] * v;
        detail[k] += filter.high_pass[m] * v;
      }
    }
    out.details.push_back(std::move(detail));
    out.scaling = std::move(approx);
  }
  return out;
}

std::vector<double> idwt(const DwtCoefficients& c) {
  std::vector<double> smooth = c.scaling;
  const std::size_t taps = c.wavelet.taps();
  for (std::size_t level = c.details.size(); level >= 1; --level) {
    const auto& detail = c.details[level - 1];
    if (detail.size() != smooth.size()) {
      fail(ErrorCode::ShapeMismatch, "inconsistent DWT level sizes");
    }
    const std::size_t n = 2 * smooth.size();
    std::vector<double> fine(n, 0.0);
    for (std::size_t k = 0; k < smooth.size(); ++k) {
      for (std::size_t m = 0; m < taps; ++m) {
        fine[(2 * k + n - m % n) % n] +=
            c.wavelet.low_pass[m] * smooth[k] + c.wavelet.high_pass[m] * detail[k];
      }
    }
    smooth = std::move(fine);
  }
  return smooth;
}

Periodogram periodogram(const NdwtCoefficients& c, PeriodogramSource source,
                        int source_parameter) {
  Periodogram p{ScaleTimeArray(c.details.levels(), c.length()), source, source_parameter, false};
  kernels::active().square(c.details.flat(), p.values.flat());
  return p;
}

}  // namespace tlsw
