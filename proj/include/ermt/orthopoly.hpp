#pragma once

// Exponentially weighted Hermite and Laguerre evaluations.
//
// The weight is carried through the three-term recurrences as a running log
// scale, so edge arguments at large degree never form the (overflowing)
// unweighted polynomial.

#include <cmath>
#include <numbers>
#include <vector>

#include "ermt/errors.hpp"

namespace ermt {

/// value * exp(log_scale) is the represented quantity.
struct WeightedPolyValue {
  double value = 0.0;
  double log_scale = 0.0;

  double to_double() const {
    if (value == 0.0) return 0.0;
    return std::copysign(std::exp(std::log(std::fabs(value)) + log_scale), value);
  }
};

namespace detail {

inline constexpr double kRescaleAbove = 1e150;

inline WeightedPolyValue fold_scale(double value, double log_scale) {
  if (value == 0.0) return {0.0, 0.0};
  const double total = std::log(std::fabs(value)) + log_scale;
  if (total > -700.0 && total < 700.0) return {value * std::exp(log_scale), 0.0};
  return {value, log_scale};
}

inline double apply_scale(double value, double log_scale) {
  if (value == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::fabs(value)) + log_scale), value);
}

}  // namespace detail

/// e^{-x/2} L_n^alpha(x).
inline WeightedPolyValue laguerre_weighted(int n, double alpha, double x) {
  detail::require(n >= 0, "laguerre_weighted: n must be nonnegative");
  detail::require(alpha > -1.0, "laguerre_weighted: alpha must exceed -1");
  detail::require(x >= 0.0, "laguerre_weighted: x must be nonnegative");
  detail::require_finite(x, "laguerre_weighted: non-finite argument");
  double ls = -0.5 * x;
  if (n == 0) return detail::fold_scale(1.0, ls);
  double l0 = 1.0, l1 = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2 * k + 1 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1);
    l0 = l1;
    l1 = l2;
    const double m = std::fabs(l1);
    if (m > detail::kRescaleAbove) {
      l0 /= m;
      l1 /= m;
      ls += std::log(m);
    }
  }
  return detail::fold_scale(l1, ls);
}

/// Hermite function phi_k(x) = H_k(x) e^{-x^2/2} / (2^k k! sqrt(pi))^{1/2}.
inline WeightedPolyValue hermite_phi(int k, double x) {
  detail::require(k >= 0, "hermite_phi: k must be nonnegative");
  detail::require_finite(x, "hermite_phi: non-finite argument");
  double ls = -0.5 * x * x;
  const double p0 = std::pow(std::numbers::pi, -0.25);
  if (k == 0) return detail::fold_scale(p0, ls);
  double f0 = p0, f1 = std::sqrt(2.0) * x * p0;
  for (int j = 1; j < k; ++j) {
    const double f2 = std::sqrt(2.0 / (j + 1)) * x * f1 - std::sqrt(double(j) / (j + 1)) * f0;
    f0 = f1;
    f1 = f2;
    const double m = std::fabs(f1);
    if (m > detail::kRescaleAbove) {
      f0 /= m;
      f1 /= m;
      ls += std::log(m);
    }
  }
  return detail::fold_scale(f1, ls);
}

/// phi_0(x), ..., phi_{count-1}(x) as plain doubles (entries below the double
/// range flush to zero).
inline std::vector<double> hermite_functions(int count, double x) {
  detail::require(count >= 0, "hermite_functions: count must be nonnegative");
  std::vector<double> out(count);
  if (count == 0) return out;
  double ls = -0.5 * x * x;
  double f0 = std::pow(std::numbers::pi, -0.25), f1 = std::sqrt(2.0) * x * f0;
  out[0] = detail::apply_scale(f0, ls);
  if (count > 1) out[1] = detail::apply_scale(f1, ls);
  for (int j = 1; j + 1 < count; ++j) {
    const double f2 = std::sqrt(2.0 / (j + 1)) * x * f1 - std::sqrt(double(j) / (j + 1)) * f0;
    f0 = f1;
    f1 = f2;
    const double m = std::fabs(f1);
    if (m > detail::kRescaleAbove) {
      f0 /= m;
      f1 /= m;
      ls += std::log(m);
    }
    out[j + 1] = detail::apply_scale(f1, ls);
  }
  return out;
}

/// Orthonormal Laguerre functions
///   psi_k(x) = sqrt(k!/Gamma(k+alpha+1)) x^{alpha/2} e^{-x/2} L_k^alpha(x),
/// k = 0..count-1, on (0, inf).
inline std::vector<double> laguerre_functions(int count, double alpha, double x) {
  detail::require(count >= 0, "laguerre_functions: count must be nonnegative");
  detail::require(alpha > -1.0, "laguerre_functions: alpha must exceed -1");
  detail::require(x > 0.0, "laguerre_functions: x must be positive");
  std::vector<double> out(count);
  if (count == 0) return out;
  double ls = 0.5 * alpha * std::log(x) - 0.5 * x - 0.5 * std::lgamma(alpha + 1.0);
  double f0 = 1.0, f1 = (1.0 + alpha - x) / std::sqrt(1.0 + alpha);
  out[0] = detail::apply_scale(1.0, ls);
  if (count > 1) out[1] = detail::apply_scale(f1, ls);
  for (int k = 1; k + 1 < count; ++k) {
    const double f2 = ((2 * k + 1 + alpha - x) * f1 - std::sqrt(k * (k + alpha)) * f0) /
                      std::sqrt((k + 1) * (k + 1 + alpha));
    f0 = f1;
    f1 = f2;
    const double m = std::fabs(f1);
    if (m > detail::kRescaleAbove) {
      f0 /= m;
      f1 /= m;
      ls += std::log(m);
    }
    out[k + 1] = detail::apply_scale(f1, ls);
  }
  return out;
}

/// The three highest functions (index n-2, n-1, n) of a family, used by the
/// Christoffel-Darboux kernels. Entries with negative index are zero.
struct TopFunctions {
  double f_nm2 = 0.0;
  double f_nm1 = 0.0;
  double f_n = 0.0;
};

inline TopFunctions hermite_top(int n, double x) {
  detail::require(n >= 1, "hermite_top: n must be positive");
  const auto f = hermite_functions(n + 1, x);
  return {n >= 2 ? f[n - 2] : 0.0, f[n - 1], f[n]};
}

inline TopFunctions laguerre_top(int n, double alpha, double x) {
  detail::require(n >= 1, "laguerre_top: n must be positive");
  const auto f = laguerre_functions(n + 1, alpha, x);
  return {n >= 2 ? f[n - 2] : 0.0, f[n - 1], f[n]};
}

}  // namespace ermt
