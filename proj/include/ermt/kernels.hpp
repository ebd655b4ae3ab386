#pragma once

// Correlation kernels: the Airy kernel, the exact Christoffel-Darboux kernels
// of GUE_n and LUE_n, and their edge expansions through order n^{-2/3}.

#include <cmath>

#include "ermt/airy.hpp"
#include "ermt/ensemble.hpp"
#include "ermt/errors.hpp"
#include "ermt/orthopoly.hpp"

namespace ermt {

namespace detail {

// Off-diagonal points closer than this fraction of the local oscillation
// length use the confluent form plus a first-order Taylor term.
inline constexpr double kConfluentFraction = 1e-5;

inline void check_order2(int order) { require(order >= 0 && order <= 2, "kernel expansion order must be in 0..2"); }

}  // namespace detail

/// K_Ai(x, y) = (Ai(x) Ai'(y) - Ai(y) Ai'(x)) / (x - y); diagonal Ai'(x)^2 - x Ai(x)^2.
inline double airy_kernel(double x, double y) {
  detail::require_finite(x, "airy_kernel: non-finite argument");
  detail::require_finite(y, "airy_kernel: non-finite argument");
  const auto ax = airy(x);
  const double d = y - x;
  if (std::fabs(d) < detail::kConfluentFraction / (1.0 + std::sqrt(std::fabs(x)))) {
    // d/dx of the diagonal is -Ai(x)^2
    return ax.aip * ax.aip - x * ax.ai * ax.ai - 0.5 * d * ax.ai * ax.ai;
  }
  const auto ay = airy(y);
  return (ax.ai * ay.aip - ay.ai * ax.aip) / (x - y);
}

/// GUE_n kernel sum_{k<n} phi_k(x) phi_k(y) in Christoffel-Darboux form
///   sqrt(n/2) (phi_n(x) phi_{n-1}(y) - phi_n(y) phi_{n-1}(x)) / (x - y);
/// diagonal n phi_{n-1}^2 - sqrt(n(n-1)) phi_n phi_{n-2}.
inline double hermite_kernel_exact(const EnsembleSpec& spec, double x, double y) {
  detail::require(spec.kind == Ensemble::GUE, "hermite_kernel_exact: GUE spec required");
  detail::require(spec.n >= 1, "hermite_kernel_exact: n must be positive");
  const int n = spec.n;
  const double nn = n;
  const auto fx = hermite_top(n, x);
  const double d = y - x;
  if (std::fabs(d) < detail::kConfluentFraction / std::sqrt(2.0 * nn + 1.0 + x * x)) {
    const double diag = nn * fx.f_nm1 * fx.f_nm1 - std::sqrt(nn * (nn - 1.0)) * fx.f_n * fx.f_nm2;
    const double slope = -std::sqrt(2.0 * nn) * fx.f_n * fx.f_nm1;
    return diag + 0.5 * d * slope;
  }
  const auto fy = hermite_top(n, y);
  return std::sqrt(nn / 2.0) * (fx.f_n * fy.f_nm1 - fy.f_n * fx.f_nm1) / (x - y);
}

/// LUE_n kernel sum_{k<n} psi_k(x) psi_k(y) for the orthonormal Laguerre
/// functions psi_k, in Christoffel-Darboux form
///   -sqrt(n(n+alpha)) (psi_n(x) psi_{n-1}(y) - psi_{n-1}(x) psi_n(y)) / (x - y).
inline double laguerre_kernel_exact(const EnsembleSpec& spec, double x, double y) {
  detail::require(spec.kind == Ensemble::LUE, "laguerre_kernel_exact: LUE spec required");
  detail::require(spec.alpha > -1.0, "laguerre_kernel_exact: alpha must exceed -1");
  detail::require(x > 0.0 && y > 0.0, "laguerre_kernel_exact: arguments must be positive");
  const int n = spec.n;
  const double nn = n, a = spec.alpha;
  const double an = -std::sqrt(nn * (nn + a));
  const auto fx = laguerre_top(n, a, x);
  const double d = y - x;
  if (std::fabs(d) < detail::kConfluentFraction * std::sqrt(x / (nn + 1.0))) {
    const double diag = an *
                        (fx.f_n * fx.f_nm1 - std::sqrt(nn * (nn + a)) * fx.f_nm1 * fx.f_nm1 +
                         std::sqrt((nn - 1.0) * (nn - 1.0 + a)) * fx.f_nm2 * fx.f_n) /
                        x;
    const double slope = -diag / x - an * fx.f_n * fx.f_nm1 / x;
    return diag + 0.5 * d * slope;
  }
  const auto fy = laguerre_top(n, a, y);
  return an * (fx.f_n * fy.f_nm1 - fx.f_nm1 * fy.f_n) / (x - y);
}

/// Exact kernel of either ensemble in the original variables.
inline double kernel_exact(const EnsembleSpec& spec, double x, double y) {
  return spec.kind == Ensemble::GUE ? hermite_kernel_exact(spec, x, y) : laguerre_kernel_exact(spec, x, y);
}

/// Exact kernel in edge variables: scale * K_n(t(X), t(Y)).
inline double scaled_kernel_exact(const EnsembleSpec& spec, double X, double Y) {
  const auto tr = edge_transform(spec);
  return tr.scale * kernel_exact(spec, tr.to_t(X), tr.to_t(Y));
}

/// K_Ai(X,Y) - c_G Ai Ai n^{-1/3}
///   + (1/20)[(X+Y) Ai'Ai' - (X^2+XY+Y^2) Ai Ai + ((3 - 20 c_G^2)/2)(Ai'Ai + Ai Ai')] n^{-2/3}.
inline double hermite_kernel_expansion(const EnsembleSpec& spec, double X, double Y, int order) {
  detail::check_order2(order);
  const double K = airy_kernel(X, Y);
  if (order == 0) return K;
  const auto ax = airy(X), ay = airy(Y);
  const double m13 = std::pow(double(spec.n), -1.0 / 3.0);
  const double c = spec.c;
  double v = K - c * ax.ai * ay.ai * m13;
  if (order >= 2) {
    v += ((X + Y) * ax.aip * ay.aip - (X * X + X * Y + Y * Y) * ax.ai * ay.ai +
          0.5 * (3.0 - 20.0 * c * c) * (ax.aip * ay.ai + ax.ai * ay.aip)) /
         20.0 * m13 * m13;
  }
  return v;
}

/// K_Ai(X,Y) - 2^{2/3} c_L Ai Ai n^{-1/3}
///   + (2^{1/3}/10)[(X^2+XY+Y^2) Ai Ai - (X+Y) Ai'Ai' - (10 c_L^2 - 1)(Ai Ai' + Ai'Ai)] n^{-2/3}.
/// alpha does not enter.
inline double laguerre_kernel_expansion(const EnsembleSpec& spec, double X, double Y, int order) {
  detail::check_order2(order);
  const double K = airy_kernel(X, Y);
  if (order == 0) return K;
  const auto ax = airy(X), ay = airy(Y);
  const double m13 = std::pow(double(spec.n), -1.0 / 3.0);
  const double c = spec.c;
  double v = K - std::cbrt(4.0) * c * ax.ai * ay.ai * m13;
  if (order >= 2) {
    v += std::cbrt(2.0) / 10.0 *
         ((X * X + X * Y + Y * Y) * ax.ai * ay.ai - (X + Y) * ax.aip * ay.aip -
          (10.0 * c * c - 1.0) * (ax.ai * ay.aip + ax.aip * ay.ai)) *
         m13 * m13;
  }
  return v;
}

inline double kernel_expansion(const EnsembleSpec& spec, double X, double Y, int order) {
  return spec.kind == Ensemble::GUE ? hermite_kernel_expansion(spec, X, Y, order)
                                    : laguerre_kernel_expansion(spec, X, Y, order);
}

/// Edge expansion of the scaled one-point density scale * K_n(t(X), t(X)).
inline double rho1_expansion(const EnsembleSpec& spec, double X, int order) {
  detail::check_order2(order);
  const auto [ai, aip] = airy(X);
  double v = aip * aip - X * ai * ai;
  if (order == 0) return v;
  const double m13 = std::pow(double(spec.n), -1.0 / 3.0);
  const double c = spec.c;
  if (spec.kind == Ensemble::GUE) {
    v -= c * ai * ai * m13;
    if (order >= 2) {
      v += (2.0 * X * aip * aip - 3.0 * X * X * ai * ai + (3.0 - 20.0 * c * c) * aip * ai) / 20.0 * m13 * m13;
    }
  } else {
    v -= std::cbrt(4.0) * c * ai * ai * m13;
    if (order >= 2) {
      v += std::cbrt(2.0) / 10.0 *
           (3.0 * X * X * ai * ai - 2.0 * X * aip * aip + 2.0 * (1.0 - 10.0 * c * c) * ai * aip) * m13 * m13;
    }
  }
  return v;
}

}  // namespace ermt
