#include "tlsw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tlsw/error.hpp"

namespace tlsw {

double mean(std::span<const double> x) {
  if (x.empty()) fail(ErrorCode::InvalidArgument, "mean of an empty sample");
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
  if (x.empty()) fail(ErrorCode::InvalidArgument, "median of an empty sample");
  std::vector<double> v(x.begin(), x.end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double upper = *mid;
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

double mad_sigma(std::span<const double> x) {
  const double centre = median(x);
  std::vector<double> dev(x.size());
  std::transform(x.begin(), x.end(), dev.begin(), [centre](double v) { return std::abs(v - centre); });
  return kMadToSigma * median(dev);
}

}  // namespace tlsw
