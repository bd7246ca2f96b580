#include "tlsw/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tlsw/error.hpp"
#include "tlsw/kernels.hpp"
#include "tlsw/stats.hpp"

namespace tlsw {
namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    fail(ErrorCode::ConfigError, "invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::size_t resolve_half_width(std::size_t requested, std::size_t length) {
  return requested == 0 ? length / 8 : requested;
}

int resolve_ti_depth(int requested, std::size_t length) {
  if (requested > 0) return requested;
  return std::max(1, dyadic_log2(length) - 3);
}

}  // namespace

Detrend Detrend::parse(std::string_view text) {
  if (text == "none") return none();
  if (text.starts_with("diff")) {
    const int order = parse_int(text.substr(4), "difference order");
    if (order < 1 || order > kMaxDifferenceOrder) {
      fail(ErrorCode::ConfigError, "difference order must lie in 1.." +
                                       std::to_string(kMaxDifferenceOrder));
    }
    return diff(order);
  }
  if (text.starts_with("seasonal:")) {
    const int period = parse_int(text.substr(9), "seasonal period");
    if (period < 1) fail(ErrorCode::ConfigError, "seasonal period must be at least 1");
    return seasonal(period);
  }
  fail(ErrorCode::ConfigError, "unknown detrend option '" + std::string(text) + "'");
}

std::string Detrend::to_string() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Difference: return "diff" + std::to_string(parameter);
    case Kind::Seasonal: return "seasonal:" + std::to_string(parameter);
  }
  return "none";
}

Smoother Smoother::parse(std::string_view text) {
  if (text == "none") return none();
  if (text == "ti") return ti();
  if (text == "mean") return running_mean(0);
  if (text.starts_with("ti:")) {
    const std::string name(text.substr(3));
    parse_filter(name);
    return ti(name);
  }
  if (text.starts_with("mean:")) {
    const int w = parse_int(text.substr(5), "running-mean half-width");
    if (w < 1) fail(ErrorCode::ConfigError, "running-mean half-width must be at least 1");
    return running_mean(static_cast<std::size_t>(w));
  }
  fail(ErrorCode::ConfigError, "unknown smoother '" + std::string(text) + "'");
}

std::string Smoother::to_string() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::RunningMean: return half_width == 0 ? "mean" : "mean:" + std::to_string(half_width);
    case Kind::TiThreshold: return "ti:" + wavelet;
  }
  return "none";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "periodic") return Boundary::Periodic;
  if (text == "reflect") return Boundary::Reflect;
  fail(ErrorCode::ConfigError, "unknown boundary '" + std::string(text) + "'");
}

std::string to_string(Boundary boundary) {
  return boundary == Boundary::Reflect ? "reflect" : "periodic";
}

int default_depth(std::size_t length, double beta) {
  const int log_length = dyadic_log2(length);
  if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorCode::ConfigError, "beta must lie in (0, 1]");
  return std::max(1, static_cast<int>(std::floor(beta * log_length)));
}

Periodogram smooth_running_mean(const Periodogram& p, std::size_t half_width) {
  if (half_width < 1) fail(ErrorCode::InvalidArgument, "running-mean half-width must be >= 1");
  Periodogram out = p;
  out.smoothed = true;
  const std::size_t n = p.values.length();
  const auto& k = kernels::active();
  for (std::size_t lev = 1; lev <= p.values.levels(); ++lev) {
    if (2 * half_width + 1 >= n) {
      const double m = mean(p.values.level(lev));
      std::fill(out.values.level(lev).begin(), out.values.level(lev).end(), m);
    } else {
      k.circular_window_mean(p.values.level(lev), half_width, out.values.level(lev));
    }
  }
  return out;
}

Periodogram smooth_ti_threshold(const Periodogram& p, const WaveletFilter& wavelet, int depth) {
  const std::size_t n = p.values.length();
  const int levels = resolve_ti_depth(depth, n);
  const double log_n = std::log(static_cast<double>(n));
  Periodogram out = p;
  out.smoothed = true;
  for (std::size_t lev = 1; lev <= p.values.levels(); ++lev) {
    NdwtCoefficients c = ndwt(p.values.level(lev), wavelet, levels);
    const double lambda = mad_sigma(c.details.level(1)) * log_n;
    for (double& d : c.details.flat()) {
      if (std::abs(d) <= lambda) d = 0.0;
    }
    const auto rebuilt = ti_reconstruct(c);
    std::copy(rebuilt.begin(), rebuilt.end(), out.values.level(lev).begin());
  }
  return out;
}

OperatorMatrix correction_matrix(const AutocorrWaveletSet& acw, int dim, const Detrend& detrend) {
  switch (detrend.kind) {
    case Detrend::Kind::None: return inner_product_matrix(acw, dim, 0);
    case Detrend::Kind::Difference: return diff_correction_matrix(acw, dim, detrend.parameter);
    case Detrend::Kind::Seasonal: return seasonal_correction_matrix(acw, dim, detrend.parameter);
  }
  fail(ErrorCode::InvalidArgument, "unknown detrend kind");
}

ScaleTimeArray expected_periodogram(const ScaleTimeArray& spectrum, const OperatorMatrix& m) {
  if (static_cast<int>(spectrum.levels()) != m.dim()) {
    fail(ErrorCode::ShapeMismatch, "spectrum has " + std::to_string(spectrum.levels()) +
                                       " scales, operator has " + std::to_string(m.dim()));
  }
  ScaleTimeArray out(spectrum.levels(), spectrum.length());
  const auto& k = kernels::active();
  for (int j = 1; j <= m.dim(); ++j) {
    for (int l = 1; l <= m.dim(); ++l) {
      k.axpy(m.at(j, l), spectrum.level(static_cast<std::size_t>(l)),
             out.level(static_cast<std::size_t>(j)));
    }
  }
  return out;
}

TimeSeries apply_detrend(const TimeSeries& x, const Detrend& detrend) {
  switch (detrend.kind) {
    case Detrend::Kind::None: return x;
    case Detrend::Kind::Difference: return difference(x, detrend.parameter);
    case Detrend::Kind::Seasonal: return seasonal_difference(x, detrend.parameter);
  }
  return x;
}

SpectralEstimator::SpectralEstimator(SpectralConfig config, std::size_t length)
    : config_(std::move(config)), length_(length), filter_(parse_filter(config_.wavelet)) {
  const int log_length = dyadic_log2(length);
  if (length < kMinSpectralLength) {
    fail(ErrorCode::SeriesTooShort, "spectral estimation needs at least " +
                                        std::to_string(kMinSpectralLength) + " samples");
  }
  if (config_.depth == 0) config_.depth = default_depth(length, config_.beta);
  if (config_.depth < 1 || config_.depth > log_length) {
    fail(ErrorCode::DepthExceeded, "J1 = " + std::to_string(config_.depth) +
                                       " exceeds log2(T) = " + std::to_string(log_length));
  }
  if (config_.smoother.kind == Smoother::Kind::RunningMean) {
    config_.smoother.half_width = resolve_half_width(config_.smoother.half_width, length);
  } else if (config_.smoother.kind == Smoother::Kind::TiThreshold) {
    config_.smoother.depth = resolve_ti_depth(config_.smoother.depth, length);
  }
  acw_ = std::make_shared<const AutocorrWaveletSet>(filter_, config_.depth);
  correction_ = correction_matrix(*acw_, config_.depth, config_.detrend);
  condition_ = condition_number(correction_.entries);
  inverse_ = invert(correction_);
  const DiscreteWaveletSet wavelets(filter_, config_.depth);
  shifts_.assign(static_cast<std::size_t>(config_.depth), 0);
  if (config_.centred) {
    for (int lev = 1; lev <= config_.depth; ++lev) {
      shifts_[static_cast<std::size_t>(lev - 1)] = energy_centre(wavelets.at(lev));
    }
  }
}

Periodogram SpectralEstimator::raw_periodogram(const TimeSeries& x) const {
  if (x.size() != length_) {
    fail(ErrorCode::ShapeMismatch, "series length " + std::to_string(x.size()) +
                                       " differs from the estimator length " +
                                       std::to_string(length_));
  }
  TimeSeries detrended;
  if (reflects()) {
    TimeSeries extended;
    extended.values.resize(2 * length_);
    std::copy(x.values.begin(), x.values.end(), extended.values.begin());
    std::reverse_copy(x.values.begin(), x.values.end(), extended.values.begin() + length_);
    detrended = config_.detrend.kind == Detrend::Kind::Difference
                    ? circular_difference(extended, config_.detrend.parameter)
                    : extended;
  } else {
    detrended = apply_detrend(x, config_.detrend);
  }
  PeriodogramSource source = PeriodogramSource::Raw;
  if (config_.detrend.kind == Detrend::Kind::Difference) source = PeriodogramSource::Differenced;
  if (config_.detrend.kind == Detrend::Kind::Seasonal) source = PeriodogramSource::Seasonal;
  const Periodogram full = periodogram(ndwt(detrended.values, filter_, config_.depth), source,
                                       config_.detrend.parameter);
  Periodogram out = full;
  out.values = ScaleTimeArray(full.values.levels(), length_);
  const auto period = static_cast<std::ptrdiff_t>(full.values.length());
  for (std::size_t lev = 1; lev <= out.values.levels(); ++lev) {
    const auto row = full.values.level(lev);
    auto dest = out.values.level(lev);
    const std::ptrdiff_t shift = shifts_[lev - 1] % period;
    for (std::size_t k = 0; k < length_; ++k) {
      dest[k] = row[static_cast<std::size_t>((static_cast<std::ptrdiff_t>(k) + shift) % period)];
    }
  }
  return out;
}

bool SpectralEstimator::reflects() const noexcept {
  return config_.boundary == Boundary::Reflect && config_.detrend.kind != Detrend::Kind::Seasonal;
}

SpectrumEstimate SpectralEstimator::finish(Periodogram p, const SpectralConfig& cfg) const {
  SpectrumEstimate est;
  est.values = expected_periodogram(p.values, inverse_);
  est.config = cfg;
  est.correction = correction_;
  est.condition_number = condition_;
  est.negative_counts.assign(est.values.levels(), 0);
  for (std::size_t lev = 1; lev <= est.values.levels(); ++lev) {
    for (double v : est.values.level(lev)) {
      if (v < 0.0) ++est.negative_counts[lev - 1];
    }
  }
  return est;
}

SpectrumEstimate SpectralEstimator::estimate(const TimeSeries& x) const {
  Periodogram p = raw_periodogram(x);
  switch (config_.smoother.kind) {
    case Smoother::Kind::None: break;
    case Smoother::Kind::RunningMean:
      p = smooth_running_mean(p, config_.smoother.half_width);
      break;
    case Smoother::Kind::TiThreshold:
      p = smooth_ti_threshold(p, parse_filter(config_.smoother.wavelet), config_.smoother.depth);
      break;
  }
  return finish(std::move(p), config_);
}

SpectrumEstimate SpectralEstimator::estimate_raw(const TimeSeries& x) const {
  SpectralConfig cfg = config_;
  cfg.smoother = Smoother::none();
  return finish(raw_periodogram(x), cfg);
}

SpectrumEstimate estimate_ews(const TimeSeries& x, const SpectralConfig& cfg) {
  return SpectralEstimator(cfg, x.size()).estimate(x);
}

}  // namespace tlsw
