#pragma once

#include <span>

namespace tlsw {

inline constexpr double kMadToSigma = 1.4826;

double mean(std::span<const double> x);

/// Median of a copy of x (mean of the two central values for even sizes).
double median(std::span<const double> x);

/// kMadToSigma * median(|x - median(x)|)
double mad_sigma(std::span<const double> x);

}  // namespace tlsw
