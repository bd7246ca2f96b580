#include "kernels_impl.hpp"

#include <algorithm>

namespace tlsw::kernels::scalar {

void circular_filter(std::span<const double> x, std::span<const double> f, std::size_t stride,
                     std::span<double> out) {
  const std::size_t n_samples = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double c = f[n];
    const std::size_t offset = (stride * n) % n_samples;
    // k in [offset, T): source index k - offset
    for (std::size_t k = offset; k < n_samples; ++k) out[k] += c * x[k - offset];
    // k in [0, offset): source index k - offset + T
    for (std::size_t k = 0; k < offset; ++k) out[k] += c * x[k + n_samples - offset];
  }
}

void circular_correlate(std::span<const double> x, std::span<const double> f, std::size_t stride,
                        std::span<double> out) {
  const std::size_t n_samples = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double c = f[n];
    const std::size_t offset = (stride * n) % n_samples;
    const std::size_t split = n_samples - offset;
    for (std::size_t k = 0; k < split; ++k) out[k] += c * x[k + offset];
    for (std::size_t k = split; k < n_samples; ++k) out[k] += c * x[k - split];
  }
}

void square(std::span<const double> x, std::span<double> out) {
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] * x[k];
}

void circular_window_mean(std::span<const double> x, std::size_t half_width,
                          std::span<double> out) {
  const std::size_t n_samples = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t width = 2 * half_width + 1;
  for (std::size_t w = 0; w < width; ++w) {
    // shift = w - W, taken modulo T
    const std::size_t back = half_width % n_samples;
    const std::size_t offset = (w % n_samples + n_samples - back) % n_samples;
    const std::size_t split = n_samples - offset;
    for (std::size_t k = 0; k < split; ++k) out[k] += x[k + offset];
    for (std::size_t k = split; k < n_samples; ++k) out[k] += x[k - split];
  }
  const double inv = 1.0 / static_cast<double>(width);
  for (auto& v : out) v *= inv;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

void scaled_sum(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = a * (x[k] + y[k]);
}

}  // namespace tlsw::kernels::scalar
