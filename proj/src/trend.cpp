#include "tlsw/trend.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlsw/error.hpp"
#include "tlsw/stats.hpp"

namespace tlsw {
namespace {

double apply_rule(double d, double lambda, ThresholdRule rule) {
  const double mag = std::abs(d);
  if (mag <= lambda) return 0.0;
  if (rule == ThresholdRule::Hard) return d;
  return std::copysign(mag - lambda, d);
}

}  // namespace

int resolve_trend_depth(const TrendConfig& cfg, std::size_t length) {
  const int log_length = dyadic_log2(length);
  const int depth = cfg.depth == 0 ? default_depth(length) : cfg.depth;
  if (depth < 1 || depth > log_length) {
    fail(ErrorCode::DepthExceeded, "trend depth " + std::to_string(depth) + " exceeds log2(T) = " +
                                       std::to_string(log_length));
  }
  return depth;
}

std::size_t repair_nonpositive(ScaleTimeArray& variances) {
  std::size_t repaired = 0;
  const std::size_t n = variances.length();
  for (std::size_t lev = 1; lev <= variances.levels(); ++lev) {
    const auto row = variances.level(lev);
    const std::vector<double> original(row.begin(), row.end());
    if (std::none_of(original.begin(), original.end(), [](double v) { return v > 0.0; })) {
      fail(ErrorCode::AllNegativeRow,
           "coefficient variances at level " + std::to_string(lev) + " are all non-positive");
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (original[s] > 0.0) continue;
      for (std::size_t offset = 1; offset < n; ++offset) {
        if (s >= offset && original[s - offset] > 0.0) {
          row[s] = original[s - offset];
          break;
        }
        if (s + offset < n && original[s + offset] > 0.0) {
          row[s] = original[s + offset];
          break;
        }
      }
      ++repaired;
    }
  }
  return repaired;
}

RepairedVariances coefficient_variance(const ScaleTimeArray& spectrum, const OperatorMatrix& cross,
                                       int depth) {
  const int spectral_levels = static_cast<int>(spectrum.levels());
  if (depth < 1 || depth > cross.dim() || spectral_levels > cross.dim()) {
    fail(ErrorCode::ShapeMismatch, "cross matrix of dimension " + std::to_string(cross.dim()) +
                                       " cannot map " + std::to_string(spectral_levels) +
                                       " spectral scales onto " + std::to_string(depth) +
                                       " trend scales");
  }
  RepairedVariances out{ScaleTimeArray(static_cast<std::size_t>(depth), spectrum.length()), 0};
  for (int r = 1; r <= depth; ++r) {
    auto row = out.values.level(static_cast<std::size_t>(r));
    for (int l = 1; l <= spectral_levels; ++l) {
      const double c = cross.at(r, l);
      const auto s = spectrum.level(static_cast<std::size_t>(l));
      for (std::size_t t = 0; t < row.size(); ++t) row[t] += c * s[t];
    }
  }
  out.repaired = repair_nonpositive(out.values);
  return out;
}

OperatorMatrix trend_cross_matrix(const std::string& trend_wavelet,
                                  const std::string& spectral_wavelet, int dim) {
  const AutocorrWaveletSet trend_acw(parse_filter(trend_wavelet), dim);
  const AutocorrWaveletSet spectral_acw(parse_filter(spectral_wavelet), dim);
  return cross_matrix(trend_acw, spectral_acw, dim);
}

TrendEstimate estimate_trend_with_variances(const TimeSeries& x, const ScaleTimeArray& variances,
                                            const TrendConfig& cfg) {
  const int depth = resolve_trend_depth(cfg, x.size());
  if (static_cast<int>(variances.levels()) < depth || variances.length() != x.size()) {
    fail(ErrorCode::ShapeMismatch, "variance array does not cover the series and trend depth");
  }
  const WaveletFilter filter = parse_filter(cfg.wavelet);
  const double factor = std::sqrt(2.0 * std::log(static_cast<double>(x.size())));

  TrendEstimate out;
  out.config = cfg;
  out.config.depth = depth;
  out.variances = ScaleTimeArray(static_cast<std::size_t>(depth), x.size());
  for (int r = 1; r <= depth; ++r) {
    const auto src = variances.level(static_cast<std::size_t>(r));
    std::copy(src.begin(), src.end(), out.variances.level(static_cast<std::size_t>(r)).begin());
  }

  if (cfg.transform == TrendTransform::TI) {
    NdwtCoefficients c = ndwt(x.values, filter, depth);
    for (int r = 1; r <= depth; ++r) {
      auto row = c.details.level(static_cast<std::size_t>(r));
      const auto var = variances.level(static_cast<std::size_t>(r));
      for (std::size_t s = 0; s < row.size(); ++s) {
        row[s] = apply_rule(row[s], std::sqrt(std::max(var[s], 0.0)) * factor, cfg.rule);
        if (row[s] != 0.0) ++out.coefficients_kept;
      }
    }
    out.mu_hat = ti_reconstruct(c);
  } else {
    DwtCoefficients c = dwt(x.values, filter, depth);
    for (int r = 1; r <= depth; ++r) {
      auto& row = c.details[static_cast<std::size_t>(r - 1)];
      const auto var = variances.level(static_cast<std::size_t>(r));
      for (std::size_t k = 0; k < row.size(); ++k) {
        const double v = var[(k << r) % x.size()];
        row[k] = apply_rule(row[k], std::sqrt(std::max(v, 0.0)) * factor, cfg.rule);
        if (row[k] != 0.0) ++out.coefficients_kept;
      }
    }
    out.mu_hat = idwt(c);
  }
  return out;
}

TrendEstimate estimate_trend(const TimeSeries& x, const SpectrumEstimate& spectrum,
                             const TrendConfig& cfg) {
  if (spectrum.length() != x.size()) {
    fail(ErrorCode::ShapeMismatch, "spectrum length " + std::to_string(spectrum.length()) +
                                       " differs from series length " + std::to_string(x.size()));
  }
  const int depth = resolve_trend_depth(cfg, x.size());
  const int dim = std::max(depth, spectrum.depth());
  const OperatorMatrix cross = trend_cross_matrix(cfg.wavelet, spectrum.config.wavelet, dim);
  RepairedVariances var = coefficient_variance(spectrum.values, cross, depth);
  if (spectrum.config.centred) {
    // coefficient k of a start-anchored wavelet sits at time k - centre(psi_r)
    const DiscreteWaveletSet wavelets(parse_filter(cfg.wavelet), depth);
    const auto period = static_cast<std::ptrdiff_t>(x.size());
    std::vector<double> rotated(x.size());
    for (int r = 1; r <= depth; ++r) {
      auto row = var.values.level(static_cast<std::size_t>(r));
      const std::ptrdiff_t shift = energy_centre(wavelets.at(r)) % period;
      for (std::size_t k = 0; k < row.size(); ++k) {
        rotated[k] = row[static_cast<std::size_t>(
            (static_cast<std::ptrdiff_t>(k) - shift + period) % period)];
      }
      std::copy(rotated.begin(), rotated.end(), row.begin());
    }
  }
  TrendEstimate out = estimate_trend_with_variances(x, var.values, cfg);
  out.negatives_repaired = var.repaired;
  return out;
}

TrendEstimate estimate_trend_global_baseline(const TimeSeries& x, const TrendConfig& cfg) {
  const int depth = resolve_trend_depth(cfg, x.size());
  const NdwtCoefficients c = ndwt(x.values, parse_filter(cfg.wavelet), depth);
  ScaleTimeArray variances(static_cast<std::size_t>(depth), x.size());
  for (int r = 1; r <= depth; ++r) {
    const double sigma = mad_sigma(c.details.level(static_cast<std::size_t>(r)));
    auto row = variances.level(static_cast<std::size_t>(r));
    std::fill(row.begin(), row.end(), sigma * sigma);
  }
  return estimate_trend_with_variances(x, variances, cfg);
}

}  // namespace tlsw
