// Compiled with -mavx2 -mno-fma. Each lane repeats the scalar operation
// sequence exactly: multiply, then add, in the same accumulation order.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>

namespace tlsw::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

// dst[i] += c * src[i] for i in [0, count)
inline void accumulate(double* dst, const double* src, double c, std::size_t count) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(vc, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), prod));
  }
  for (; i < count; ++i) dst[i] += c * src[i];
}

// dst[i] += src[i]
inline void accumulate_plain(double* dst, const double* src, std::size_t count) {
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
  }
  for (; i < count; ++i) dst[i] += src[i];
}

}  // namespace

void circular_filter(std::span<const double> x, std::span<const double> f, std::size_t stride,
                     std::span<double> out) {
  const std::size_t n_samples = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const std::size_t offset = (stride * n) % n_samples;
    accumulate(out.data() + offset, x.data(), f[n], n_samples - offset);
    accumulate(out.data(), x.data() + n_samples - offset, f[n], offset);
  }
}

void circular_correlate(std::span<const double> x, std::span<const double> f, std::size_t stride,
                        std::span<double> out) {
  const std::size_t n_samples = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const std::size_t offset = (stride * n) % n_samples;
    const std::size_t split = n_samples - offset;
    accumulate(out.data(), x.data() + offset, f[n], split);
    accumulate(out.data() + split, x.data(), f[n], offset);
  }
}

void square(std::span<const double> x, std::span<double> out) {
  const std::size_t count = x.size();
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(v, v));
  }
  for (; i < count; ++i) out[i] = x[i] * x[i];
}

void circular_window_mean(std::span<const double> x, std::size_t half_width,
                          std::span<double> out) {
  const std::size_t n_samples = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t width = 2 * half_width + 1;
  const std::size_t back = half_width % n_samples;
  for (std::size_t w = 0; w < width; ++w) {
    const std::size_t offset = (w % n_samples + n_samples - back) % n_samples;
    const std::size_t split = n_samples - offset;
    accumulate_plain(out.data(), x.data() + offset, split);
    accumulate_plain(out.data() + split, x.data(), offset);
  }
  const double inv = 1.0 / static_cast<double>(width);
  const __m256d vinv = _mm256_set1_pd(inv);
  std::size_t i = 0;
  for (; i + kLanes <= n_samples; i += kLanes) {
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_loadu_pd(out.data() + i), vinv));
  }
  for (; i < n_samples; ++i) out[i] *= inv;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  accumulate(y.data(), x.data(), a, x.size());
}

void scaled_sum(double a, std::span<const double> x, std::span<double> y) {
  const __m256d va = _mm256_set1_pd(a);
  const std::size_t count = x.size();
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_mul_pd(va, s));
  }
  for (; i < count; ++i) y[i] = a * (x[i] + y[i]);
}

}  // namespace tlsw::kernels::avx2
