#include "tlsw/operators.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "tlsw/error.hpp"

namespace tlsw {
namespace {

void check_depth(const AutocorrWaveletSet& acw, int dim) {
  if (dim < 1 || dim > acw.max_depth()) {
    fail(ErrorCode::DepthExceeded, "operator dimension " + std::to_string(dim) +
                                       " exceeds autocorrelation depth " +
                                       std::to_string(acw.max_depth()));
  }
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double inner_product(std::span<const double> a, std::span<const double> b, std::ptrdiff_t shift) {
  // sum_tau a(tau) b(tau - shift); both stored centred.
  const auto half_a = static_cast<std::ptrdiff_t>(a.size() / 2);
  const auto half_b = static_cast<std::ptrdiff_t>(b.size() / 2);
  const std::ptrdiff_t lo = std::max(-half_a, -half_b + shift);
  const std::ptrdiff_t hi = std::min(half_a, half_b + shift);
  double acc = 0.0;
  for (std::ptrdiff_t tau = lo; tau <= hi; ++tau) {
    acc += a[static_cast<std::size_t>(tau + half_a)] *
           b[static_cast<std::size_t>(tau - shift + half_b)];
  }
  return acc;
}

// sum_k w_k Psi_j(tau - k lag), stored centred.
std::vector<double> filtered_acw(const AutocorrWaveletSet& acw, int level,
                                 const std::vector<double>& weights, int lag) {
  const std::ptrdiff_t half =
      acw.max_lag(level) + static_cast<std::ptrdiff_t>(weights.size() - 1) * lag;
  std::vector<double> out(static_cast<std::size_t>(2 * half + 1), 0.0);
  for (std::ptrdiff_t tau = -half; tau <= half; ++tau) {
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      acc += weights[k] * acw.value(level, tau - static_cast<std::ptrdiff_t>(k) * lag);
    }
    out[static_cast<std::size_t>(tau + half)] = acc;
  }
  return out;
}

// Gram matrix of the filtered autocorrelation wavelets. Equal to the binomial
// combination of lagged A matrices without its cancellation.
Eigen::MatrixXd filtered_gram(const AutocorrWaveletSet& acw, int dim,
                              const std::vector<double>& weights, int lag) {
  std::vector<std::vector<double>> rows;
  for (int j = 1; j <= dim; ++j) rows.push_back(filtered_acw(acw, j, weights, lag));
  Eigen::MatrixXd g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int l = j; l < dim; ++l) {
      g(j, l) = inner_product(rows[static_cast<std::size_t>(j)], rows[static_cast<std::size_t>(l)], 0);
      g(l, j) = g(j, l);
    }
  }
  return g;
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::A: return "A";
    case OperatorKind::ALagged: return "A_lagged";
    case OperatorKind::DDiff: return "D_diff";
    case OperatorKind::DSeasonal: return "D_seasonal";
    case OperatorKind::Cross: return "C_cross";
    case OperatorKind::PRescaled: return "P_rescaled";
  }
  return "unknown";
}

std::string OperatorMatrix::label() const {
  std::string s = to_string(kind);
  if (kind == OperatorKind::ALagged || kind == OperatorKind::DDiff ||
      kind == OperatorKind::DSeasonal) {
    s += "(" + std::to_string(parameter) + ")";
  }
  if (inverted) s += "^-1";
  return s;
}

double lagged_inner_product(const AutocorrWaveletSet& acw, int level_j, int level_l, int lag) {
  return inner_product(acw.values(level_j), acw.values(level_l), lag);
}

OperatorMatrix inner_product_matrix(const AutocorrWaveletSet& acw, int dim, int lag) {
  check_depth(acw, dim);
  if (lag < 0) fail(ErrorCode::InvalidArgument, "lag must be non-negative");
  OperatorMatrix m;
  m.kind = lag == 0 ? OperatorKind::A : OperatorKind::ALagged;
  m.parameter = lag;
  m.filters = acw.filter().name();
  m.entries.resize(dim, dim);
  for (int j = 1; j <= dim; ++j) {
    for (int l = 1; l <= dim; ++l) m.entries(j - 1, l - 1) = lagged_inner_product(acw, j, l, lag);
  }
  return m;
}

OperatorMatrix diff_correction_matrix(const AutocorrWaveletSet& acw, int dim, int order) {
  if (order < 1 || order > kMaxDifferenceOrder) {
    fail(ErrorCode::UnsupportedOrder,
         "difference order must lie in 1.." + std::to_string(kMaxDifferenceOrder));
  }
  check_depth(acw, dim);
  OperatorMatrix m;
  m.kind = OperatorKind::DDiff;
  m.parameter = order;
  m.filters = acw.filter().name();
  std::vector<double> weights(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    weights[static_cast<std::size_t>(k)] =
        (k % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binomial(order, k));
  }
  m.entries = filtered_gram(acw, dim, weights, 1);
  return m;
}

OperatorMatrix seasonal_correction_matrix(const AutocorrWaveletSet& acw, int dim, int period) {
  if (period < 1) fail(ErrorCode::InvalidArgument, "seasonal period must be at least 1");
  check_depth(acw, dim);
  OperatorMatrix m;
  m.kind = OperatorKind::DSeasonal;
  m.parameter = period;
  m.filters = acw.filter().name();
  m.entries = filtered_gram(acw, dim, {1.0, -1.0}, period);
  const double cond = condition_number(m.entries);
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << "lag-" << period << " correction matrix has condition number " << cond;
    fail(ErrorCode::SingularMatrix, msg.str());
  }
  return m;
}

OperatorMatrix cross_matrix(const AutocorrWaveletSet& first, const AutocorrWaveletSet& second,
                            int dim) {
  check_depth(first, dim);
  check_depth(second, dim);
  OperatorMatrix m;
  m.kind = OperatorKind::Cross;
  m.filters = first.filter().name() + "/" + second.filter().name();
  m.entries.resize(dim, dim);
  for (int j = 1; j <= dim; ++j) {
    for (int l = 1; l <= dim; ++l) {
      m.entries(j - 1, l - 1) = inner_product(first.values(j), second.values(l), 0);
    }
  }
  return m;
}

OperatorMatrix rescale_P(const OperatorMatrix& d1) {
  if (d1.kind != OperatorKind::DDiff || d1.parameter != 1 || d1.inverted) {
    fail(ErrorCode::KindMismatch, "P is defined from D^1, got " + d1.label());
  }
  OperatorMatrix p = d1;
  p.kind = OperatorKind::PRescaled;
  p.parameter = 0;
  for (int j = 1; j <= d1.dim(); ++j) {
    for (int l = 1; l <= d1.dim(); ++l) {
      p.entries(j - 1, l - 1) = std::sqrt(std::ldexp(1.0, j)) * d1.entries(j - 1, l - 1) *
                                std::sqrt(std::ldexp(1.0, l));
    }
  }
  return p;
}

double condition_number(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smallest = sv(sv.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

OperatorMatrix invert(const OperatorMatrix& m) {
  if (m.entries.rows() != m.entries.cols()) {
    fail(ErrorCode::ShapeMismatch, "only square operators can be inverted");
  }
  const double cond = condition_number(m.entries);
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << m.label() << " (dimension " << m.dim() << ") has condition number " << cond
        << "; reduce the number of corrected scales";
    fail(ErrorCode::SingularMatrix, msg.str());
  }
  OperatorMatrix inv = m;
  inv.inverted = !m.inverted;
  inv.entries = m.entries.fullPivLu().inverse();
  const Eigen::MatrixXd residual =
      m.entries * inv.entries - Eigen::MatrixXd::Identity(m.dim(), m.dim());
  if (!(residual.cwiseAbs().maxCoeff() <= 1e-8)) {
    fail(ErrorCode::SingularMatrix, m.label() + " inverse fails the residual check");
  }
  return inv;
}

std::string to_csv(const OperatorMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "level";
  for (int l = 1; l <= m.dim(); ++l) out << ",l" << l;
  out << '\n';
  for (int j = 1; j <= m.dim(); ++j) {
    out << j;
    for (int l = 1; l <= m.dim(); ++l) out << ',' << m.entries(j - 1, l - 1);
    out << '\n';
  }
  return out.str();
}

}  // namespace tlsw
