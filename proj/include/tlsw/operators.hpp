#pragma once

// Inner-product operators over scales built from autocorrelation wavelets.
// Matrix row/column r corresponds to level r + 1 (scale j = -(r + 1)).

#include <Eigen/Dense>
#include <string>

#include "tlsw/wavelet.hpp"

namespace tlsw {

enum class OperatorKind { A, ALagged, DDiff, DSeasonal, Cross, PRescaled };

std::string to_string(OperatorKind kind);

inline constexpr double kMaxConditionNumber = 1e12;
inline constexpr int kMaxDifferenceOrder = 5;

struct OperatorMatrix {
  OperatorKind kind = OperatorKind::A;
  int parameter = 0;  // lag for ALagged, order for DDiff, period for DSeasonal
  Eigen::MatrixXd entries;
  std::string filters;  // provenance, e.g. "ep4" or "la4/ep4" for cross matrices
  bool inverted = false;

  int dim() const noexcept { return static_cast<int>(entries.rows()); }

  /// Entry for (level j, level l), both 1-based.
  double at(int level_j, int level_l) const { return entries(level_j - 1, level_l - 1); }

  std::string label() const;
};

/// sum_tau Psi_j(tau) Psi_l(tau - lag)
double lagged_inner_product(const AutocorrWaveletSet& acw, int level_j, int level_l, int lag);

/// A_J for lag 0, A^n_J otherwise.
OperatorMatrix inner_product_matrix(const AutocorrWaveletSet& acw, int dim, int lag);

/// D^n = C(2n,n) A + 2 sum_{tau=1..n} (-1)^tau C(2n, n+tau) A^tau
OperatorMatrix diff_correction_matrix(const AutocorrWaveletSet& acw, int dim, int order);

/// D^L = 2A - 2A^L, the bias operator of the lag-L differenced periodogram.
OperatorMatrix seasonal_correction_matrix(const AutocorrWaveletSet& acw, int dim, int period);

/// C_{jl} = sum_tau Psi^{first}_j(tau) Psi^{second}_l(tau). With the trend
/// wavelet first and the spectral wavelet second, C S gives the variance of
/// the trend wavelet coefficients of a process with spectrum S.
OperatorMatrix cross_matrix(const AutocorrWaveletSet& first, const AutocorrWaveletSet& second,
                            int dim);

/// P_{jl} = 2^{m_j/2} D^1_{jl} 2^{m_l/2} with m = -j the level.
OperatorMatrix rescale_P(const OperatorMatrix& d1);

/// 2-norm condition number (ratio of extreme singular values).
double condition_number(const Eigen::MatrixXd& m);

/// Dense LU inverse guarded by the condition number and a residual check.
/// Throws SingularMatrix when cond > kMaxConditionNumber.
OperatorMatrix invert(const OperatorMatrix& m);

/// Rows are levels 1..J, 17 significant digits.
std::string to_csv(const OperatorMatrix& m);

}  // namespace tlsw
