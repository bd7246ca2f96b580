#pragma once

#include <cstddef>
#include <span>

namespace tlsw::kernels {

#define TLSW_KERNEL_DECLS                                                                         \
  void circular_filter(std::span<const double> x, std::span<const double> f, std::size_t stride, \
                       std::span<double> out);                                                    \
  void circular_correlate(std::span<const double> x, std::span<const double> f,                  \
                          std::size_t stride, std::span<double> out);                             \
  void square(std::span<const double> x, std::span<double> out);                                  \
  void circular_window_mean(std::span<const double> x, std::size_t half_width,                   \
                            std::span<double> out);                                               \
  void axpy(double a, std::span<const double> x, std::span<double> y);                           \
  void scaled_sum(double a, std::span<const double> x, std::span<double> y);

namespace scalar {
TLSW_KERNEL_DECLS
}

namespace avx2 {
TLSW_KERNEL_DECLS
}

#undef TLSW_KERNEL_DECLS

}  // namespace tlsw::kernels
