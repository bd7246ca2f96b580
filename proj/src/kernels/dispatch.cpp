#include "tlsw/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace tlsw::kernels {
namespace {

constexpr KernelTable kScalar{
    Isa::Scalar,           scalar::circular_filter, scalar::circular_correlate, scalar::square,
    scalar::circular_window_mean, scalar::axpy,      scalar::scaled_sum,
};

#if defined(TLSW_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::Avx2,           avx2::circular_filter, avx2::circular_correlate, avx2::square,
    avx2::circular_window_mean, avx2::axpy,    avx2::scaled_sum,
};
#endif

const KernelTable* initial_choice() noexcept {
  if (const char* env = std::getenv("TLSW_SIMD")) {
    if (std::string(env) == "scalar") return &kScalar;
  }
  if (const KernelTable* simd = avx2_table(); simd != nullptr && cpu_supports(Isa::Avx2)) {
    return simd;
  }
  return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(TLSW_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(TLSW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  if (isa == Isa::Scalar) {
    current().store(&kScalar, std::memory_order_release);
    return true;
  }
  const KernelTable* simd = avx2_table();
  if (simd == nullptr || !cpu_supports(isa)) return false;
  current().store(simd, std::memory_order_release);
  return true;
}

}  // namespace tlsw::kernels
