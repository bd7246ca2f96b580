#include <doctest.h>

#include <cstring>
#include <vector>

#include "support.hpp"
#include "tlsw/kernels.hpp"

using namespace tlsw;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Restore {
  kernels::Isa isa = kernels::active().isa;
  ~Restore() { kernels::select(isa); }
};

}  // namespace

TEST_CASE("scalar kernels match their definitions") {
  const auto& k = kernels::scalar_table();
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> out(8);

  k.circular_filter(x, std::vector<double>{1.0, -1.0}, 2, out);
  CHECK(out[0] == 1.0 - 7.0);
  CHECK(out[3] == 4.0 - 2.0);

  k.circular_correlate(x, std::vector<double>{1.0, -1.0}, 1, out);
  CHECK(out[0] == 1.0 - 2.0);
  CHECK(out[7] == 8.0 - 1.0);

  std::vector<double> impulse(8, 0.0);
  impulse[0] = 3.0;
  k.circular_window_mean(impulse, 1, out);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == doctest::Approx(1.0));
  CHECK(out[7] == doctest::Approx(1.0));
  CHECK(out[2] == 0.0);

  std::vector<double> y(8, 1.0);
  k.axpy(2.0, x, y);
  CHECK(y[2] == 7.0);
  k.scaled_sum(0.5, x, y);
  CHECK(y[2] == 5.0);
  k.square(x, out);
  CHECK(out[4] == 25.0);
}

TEST_CASE("AVX2 kernels are bitwise identical to the scalar reference") {
  const kernels::KernelTable* avx = kernels::avx2_table();
  if (avx == nullptr || !kernels::cpu_supports(kernels::Isa::Avx2)) {
    MESSAGE("AVX2 variants unavailable; skipped");
    return;
  }
  const auto& ref = kernels::scalar_table();
  for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 33u, 1024u}) {
    CAPTURE(n);
    const auto x = test::gaussian_vector(n, 11 + n);
    for (std::size_t taps : {2u, 8u, 20u}) {
      const auto f = test::gaussian_vector(taps, 5 + taps);
      for (std::size_t stride : {1u, 2u, 64u}) {
        std::vector<double> a(n), b(n);
        ref.circular_filter(x, f, stride, a);
        avx->circular_filter(x, f, stride, b);
        CHECK(same_bits(a, b));
        ref.circular_correlate(x, f, stride, a);
        avx->circular_correlate(x, f, stride, b);
        CHECK(same_bits(a, b));
      }
    }
    std::vector<double> a(n), b(n);
    ref.square(x, a);
    avx->square(x, b);
    CHECK(same_bits(a, b));
    for (std::size_t w : {1u, 5u, 64u}) {
      ref.circular_window_mean(x, w, a);
      avx->circular_window_mean(x, w, b);
      CHECK(same_bits(a, b));
    }
    std::vector<double> ya = test::gaussian_vector(n, 99), yb = ya;
    ref.axpy(0.37, x, ya);
    avx->axpy(0.37, x, yb);
    CHECK(same_bits(ya, yb));
    ref.scaled_sum(1.5, x, ya);
    avx->scaled_sum(1.5, x, yb);
    CHECK(same_bits(ya, yb));
  }
}

TEST_CASE("kernel selection can be overridden") {
  Restore restore;
  CHECK(kernels::select(kernels::Isa::Scalar));
  CHECK(kernels::active().isa == kernels::Isa::Scalar);
  if (kernels::avx2_table() != nullptr && kernels::cpu_supports(kernels::Isa::Avx2)) {
    CHECK(kernels::select(kernels::Isa::Avx2));
    CHECK(kernels::active().isa == kernels::Isa::Avx2);
  }
}
