#pragma once

// Inner loops shared by the transforms and estimators. Every kernel has a
// scalar reference version and, where the build and the CPU allow it, an AVX2
// version. Both variants perform the same operations in the same order per
// output element and never contract multiply-adds, so their results are
// bitwise identical; the equivalence tests rely on that.

#include <cstddef>
#include <span>
#include <string_view>

namespace tlsw::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  /// out[k] = sum_n f[n] * x[(k - stride*n) mod T], accumulated in n order.
  void (*circular_filter)(std::span<const double> x, std::span<const double> f,
                          std::size_t stride, std::span<double> out);

  /// out[k] = sum_n f[n] * x[(k + stride*n) mod T]; adjoint of circular_filter.
  void (*circular_correlate)(std::span<const double> x, std::span<const double> f,
                             std::size_t stride, std::span<double> out);

  /// out[k] = x[k]^2
  void (*square)(std::span<const double> x, std::span<double> out);

  /// out[k] = (1/(2W+1)) sum_{w=-W..W} x[(k+w) mod T], accumulated in w order.
  void (*circular_window_mean)(std::span<const double> x, std::size_t half_width,
                               std::span<double> out);

  /// y[k] += a * x[k]
  void (*axpy)(double a, std::span<const double> x, std::span<double> y);

  /// y[k] = a * (x[k] + y[k])
  void (*scaled_sum)(double a, std::span<const double> x, std::span<double> y);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variants were not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;

/// Kernel table used by the library. Picks AVX2 when compiled in and
/// supported by the CPU unless TLSW_SIMD=scalar is set in the environment.
const KernelTable& active() noexcept;

/// Overrides the runtime choice (tests, benchmarks). Returns false if the
/// requested variant is unavailable, in which case nothing changes.
bool select(Isa isa) noexcept;

}  // namespace tlsw::kernels
