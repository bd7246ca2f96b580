#include "tlsw/wavelet.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>

#include "tlsw/error.hpp"

namespace tlsw {
namespace {

using cld = std::complex<long double>;

// For each N, bit i set means the i-th root group (sorted by argument)
// is reflected to outside the unit circle. Reproduces the standard
// least-asymmetric tables.
constexpr std::array<unsigned, kMaxVanishingMoments + 1> kLeastAsymmetricMask = {
    0, 0, 0, 0, 1, 1, 2, 1, 5, 6, 10};

long double binomial(int n, int k) {
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r;
}

cld eval_poly(const std::vector<long double>& coeffs, cld y) {
  cld acc = 0.0L;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

cld eval_deriv(const std::vector<long double>& coeffs, cld y) {
  cld acc = 0.0L;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    acc = acc * y + coeffs[k] * static_cast<long double>(k);
  }
  return acc;
}

// Roots of P(y) = sum_{k<N} C(N-1+k, k) y^k.
std::vector<cld> half_band_roots(int n) {
  const int degree = n - 1;
  std::vector<long double> coeffs(n);
  for (int k = 0; k < n; ++k) coeffs[k] = binomial(n - 1 + k, k);

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -static_cast<double>(coeffs[i] / coeffs[degree]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<cld> roots;
  for (int i = 0; i < degree; ++i) {
    cld y(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int it = 0; it < 50; ++it) {
      const cld step = eval_poly(coeffs, y) / eval_deriv(coeffs, y);
      y -= step;
      if (std::abs(step) < 1e-19L * (1.0L + std::abs(y))) break;
    }
    roots.push_back(y);
  }
  return roots;
}

struct RootGroup {
  cld z;
  bool conjugate_pair;
};

std::vector<double> daubechies_low_pass(int n, unsigned reflect_mask) {
  std::vector<RootGroup> groups;
  for (const cld& y : half_band_roots(n)) {
    const cld b = 2.0L - 4.0L * y;
    const cld disc = std::sqrt(b * b - 4.0L);
    cld z = (b - disc) / 2.0L;
    if (std::abs(z) > 1.0L) z = (b + disc) / 2.0L;
    if (std::abs(z.imag()) < 1e-14L) {
      groups.push_back({cld(z.real(), 0.0L), false});
    } else if (z.imag() > 0.0L) {
      groups.push_back({z, true});
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const RootGroup& a, const RootGroup& b) { return std::arg(a.z) < std::arg(b.z); });

  std::vector<cld> roots(static_cast<std::size_t>(n), cld(-1.0L, 0.0L));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    cld z = groups[i].z;
    if ((reflect_mask >> i) & 1U) z = 1.0L / z;
    roots.push_back(z);
    if (groups[i].conjugate_pair) roots.push_back(std::conj(z));
  }

  // Expand prod (x - r) with the leading coefficient first.
  std::vector<cld> poly{cld(1.0L)};
  for (const cld& r : roots) {
    std::vector<cld> next(poly.size() + 1, cld(0.0L));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + 1] -= poly[k] * r;
    }
    poly = std::move(next);
  }
  long double total = 0.0L;
  for (const cld& c : poly) total += c.real();
  const long double scale = std::numbers::sqrt2_v<long double> / total;
  std::vector<double> h;
  h.reserve(poly.size());
  for (const cld& c : poly) h.push_back(static_cast<double>(c.real() * scale));
  return h;
}

std::vector<double> quadrature_mirror(const std::vector<double>& h) {
  const std::size_t taps = h.size();
  std::vector<double> g(taps);
  for (std::size_t k = 0; k < taps; ++k) {
    g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[taps - 1 - k];
  }
  return g;
}

// out = f * (v upsampled by 2)
std::vector<double> upsample_convolve(std::span<const double> f, std::span<const double> v) {
  std::vector<double> out(2 * (v.size() - 1) + f.size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (std::size_t i = 0; i < f.size(); ++i) out[2 * k + i] += f[i] * v[k];
  }
  return out;
}

}  // namespace

std::string WaveletFilter::name() const {
  switch (family) {
    case Family::Haar: return "haar";
    case Family::DaubExtremalPhase: return "ep" + std::to_string(vanishing_moments);
    case Family::DaubLeastAsymmetric: return "la" + std::to_string(vanishing_moments);
  }
  return "unknown";
}

WaveletFilter make_filter(Family family, int vanishing_moments) {
  const bool haar_ok = family == Family::Haar && vanishing_moments == 1;
  const bool daub_ok = family != Family::Haar && vanishing_moments >= 1 &&
                       vanishing_moments <= kMaxVanishingMoments;
  if (!haar_ok && !daub_ok) {
    fail(ErrorCode::UnsupportedFilter,
         "no filter for this family with " + std::to_string(vanishing_moments) +
             " vanishing moments");
  }
  WaveletFilter f;
  f.family = family;
  f.vanishing_moments = vanishing_moments;
  if (vanishing_moments == 1) {
    f.low_pass = {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
  } else {
    const unsigned mask =
        family == Family::DaubLeastAsymmetric ? kLeastAsymmetricMask[vanishing_moments] : 0U;
    f.low_pass = daubechies_low_pass(vanishing_moments, mask);
  }
  f.high_pass = quadrature_mirror(f.low_pass);
  return f;
}

WaveletFilter parse_filter(std::string_view name) {
  if (name == "haar") return make_filter(Family::Haar, 1);
  auto with_moments = [&](std::size_t prefix, Family family) {
    int moments = 0;
    const auto* first = name.data() + prefix;
    const auto* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, moments);
    if (ec != std::errc() || ptr != last || first == last) {
      fail(ErrorCode::UnsupportedFilter, "cannot parse wavelet name '" + std::string(name) + "'");
    }
    return make_filter(family, moments);
  };
  if (name.starts_with("ep") || name.starts_with("db")) {
    return with_moments(2, Family::DaubExtremalPhase);
  }
  if (name.starts_with("la")) return with_moments(2, Family::DaubLeastAsymmetric);
  if (name.starts_with("sym")) return with_moments(3, Family::DaubLeastAsymmetric);
  fail(ErrorCode::UnsupportedFilter, "unknown wavelet '" + std::string(name) + "'");
}

std::size_t wavelet_length(std::size_t taps, int level) {
  return ((std::size_t{1} << level) - 1) * (taps - 1) + 1;
}

DiscreteWaveletSet::DiscreteWaveletSet(WaveletFilter filter, int max_depth)
    : filter_(std::move(filter)), max_depth_(max_depth) {
  if (max_depth < 1 || max_depth > kMaxDepth) {
    fail(ErrorCode::DepthExceeded,
         "discrete wavelet depth must lie in 1.." + std::to_string(kMaxDepth));
  }
  vectors_.reserve(static_cast<std::size_t>(max_depth));
  vectors_.push_back(filter_.high_pass);
  for (int level = 2; level <= max_depth; ++level) {
    vectors_.push_back(upsample_convolve(filter_.low_pass, vectors_.back()));
  }
}

std::span<const double> DiscreteWaveletSet::at(int level) const {
  if (level < 1 || level > max_depth_) {
    fail(ErrorCode::DepthExceeded, "level " + std::to_string(level) + " beyond depth " +
                                       std::to_string(max_depth_));
  }
  return vectors_[static_cast<std::size_t>(level - 1)];
}

std::vector<double> autocorrelate(std::span<const double> v) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  std::vector<double> out(static_cast<std::size_t>(2 * n - 1), 0.0);
  for (std::ptrdiff_t tau = -(n - 1); tau <= n - 1; ++tau) {
    double acc = 0.0;
    for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(0, tau); k < std::min(n, n + tau); ++k) {
      acc += v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k - tau)];
    }
    out[static_cast<std::size_t>(tau + n - 1)] = acc;
  }
  return out;
}

AutocorrWaveletSet::AutocorrWaveletSet(const DiscreteWaveletSet& source)
    : filter_(source.filter()), max_depth_(source.max_depth()) {
  build();
}

AutocorrWaveletSet::AutocorrWaveletSet(const WaveletFilter& filter, int max_depth)
    : filter_(filter), max_depth_(max_depth) {
  if (max_depth < 1 || max_depth > kMaxDepth) {
    fail(ErrorCode::DepthExceeded,
         "autocorrelation wavelet depth must lie in 1.." + std::to_string(kMaxDepth));
  }
  build();
}

// The autocorrelation of a convolution is the convolution of the
// autocorrelations, so Psi follows the same cascade as psi with h and g
// replaced by their own autocorrelations.
void AutocorrWaveletSet::build() {
  const std::vector<double> low_acf = autocorrelate(filter_.low_pass);
  values_.clear();
  values_.reserve(static_cast<std::size_t>(max_depth_));
  values_.push_back(autocorrelate(filter_.high_pass));
  for (int level = 2; level <= max_depth_; ++level) {
    values_.push_back(upsample_convolve(low_acf, values_.back()));
  }
  // Convolution leaves rounding-level asymmetry between +tau and -tau.
  for (auto& row : values_) {
    const std::size_t n = row.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
      const double avg = 0.5 * (row[i] + row[n - 1 - i]);
      row[i] = avg;
      row[n - 1 - i] = avg;
    }
  }
}

std::ptrdiff_t AutocorrWaveletSet::max_lag(int level) const {
  return static_cast<std::ptrdiff_t>(values(level).size() / 2);
}

std::span<const double> AutocorrWaveletSet::values(int level) const {
  if (level < 1 || level > max_depth_) {
    fail(ErrorCode::DepthExceeded, "level " + std::to_string(level) + " beyond depth " +
                                       std::to_string(max_depth_));
  }
  return values_[static_cast<std::size_t>(level - 1)];
}

double AutocorrWaveletSet::value(int level, std::ptrdiff_t tau) const {
  const auto row = values(level);
  const auto half = static_cast<std::ptrdiff_t>(row.size() / 2);
  if (tau < -half || tau > half) return 0.0;
  return row[static_cast<std::size_t>(tau + half)];
}

std::ptrdiff_t energy_centre(std::span<const double> psi) {
  double centre = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) centre += static_cast<double>(n) * psi[n] * psi[n];
  return static_cast<std::ptrdiff_t>(std::lround(centre));
}

}  // namespace tlsw
