#pragma once

// Edge (Plancherel-Rotach) expansions of the weighted Laguerre polynomials
// e^{-x/2} L_n^alpha(x) near the largest zero, through order n^{-1}.
//
// Two parametrizations are provided, each with its own coefficient table:
//   pr_laguerre_expansion    x = xi^2,  xi = sqrt(4n+2alpha+2c) + t / (2^{2/3} n^{1/6})
//   laguerre_edge_expansion  x = 4n + 2alpha + 2c + 2 (2n)^{1/3} X
//
// The n^{-1} coefficients were fixed by high-degree numerical extrapolation
// against the exact recurrence; see README ("Expansion coefficients").

#include <cmath>

#include "ermt/airy.hpp"
#include "ermt/errors.hpp"

namespace ermt {

enum class EdgeDegree { N, NPlus1 };

namespace detail {

inline const double kCbrt2 = std::cbrt(2.0);
inline const double kCbrt4 = std::cbrt(4.0);

inline void check_order(int order) {
  require(order >= 0 && order <= 3, "expansion order must be in 0..3");
}

inline double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace detail

/// Argument xi at which pr_laguerre_expansion approximates e^{-xi^2/2} L_n^alpha(xi^2).
inline double pr_xi(int n, double alpha, double c, double t) {
  return std::sqrt(4.0 * n + 2.0 * alpha + 2.0 * c) + t / (detail::kCbrt4 * std::pow(double(n), 1.0 / 6.0));
}

/// Partial sum, through n^{-order/3}, of the edge expansion of
/// e^{-xi^2/2} L_n^alpha(xi^2) including the prefactor (-1)^n 2^{-alpha-1/3} n^{-1/3}.
inline double pr_laguerre_expansion(int n, double alpha, double c, double t, int order) {
  detail::require(n >= 1, "pr_laguerre_expansion: n must be positive");
  detail::require(alpha > -1.0, "pr_laguerre_expansion: alpha must exceed -1");
  detail::check_order(order);
  const auto [ai, aip] = airy(t);
  const double nn = n;
  const double m13 = std::pow(nn, -1.0 / 3.0);
  const double a = alpha;
  double sum = ai;
  if (order >= 1) sum += (c - 1.0) / detail::kCbrt2 * aip * m13;
  if (order >= 2) {
    sum += ((2.0 - 10.0 * c + 5.0 * c * c - 5.0 * a) / (10.0 * detail::kCbrt4) * t * ai +
            t * t / (20.0 * detail::kCbrt4) * aip) *
           m13 * m13;
  }
  if (order >= 3) {
    const double c2 = c * c, c3 = c2 * c;
    const double k0 = (5.0 * a - 15.0 * c * a + 5.0 * c3 - 15.0 * c2 + 6.0 * c - 6.0) / 60.0;
    const double k3 = (c - 1.0) / 40.0;
    const double k1p = (5.0 * c3 - 15.0 * c2 + 9.0 * c + 6.0 + a * (20.0 - 15.0 * c)) / 60.0;
    sum += ((k0 + k3 * t * t * t) * ai + k1p * t * aip) / nn;
  }
  return detail::parity(n) * std::pow(2.0, -a - 1.0 / 3.0) * m13 * sum;
}

/// Argument x at which laguerre_edge_expansion is evaluated.
inline double edge_x(int n, double alpha, double c, double X) {
  return 4.0 * n + 2.0 * alpha + 2.0 * c + 2.0 * std::cbrt(2.0 * n) * X;
}

/// Partial sum of the edge expansion of e^{-x/2} L_m^alpha(x) at x = edge_x(n, alpha, c, X)
/// with m = n or n+1, in powers of n^{-1/3}. The prefactor is
/// (-1)^m 2^{-alpha-1/3} m^{-1/3}.
inline double laguerre_edge_expansion(int n, double alpha, double c, double X, EdgeDegree which,
                                      int order) {
  detail::require(n >= 1, "laguerre_edge_expansion: n must be positive");
  detail::require(alpha > -1.0, "laguerre_edge_expansion: alpha must exceed -1");
  detail::check_order(order);
  const auto [ai, aip] = airy(X);
  const double nn = n;
  const double m13 = std::pow(nn, -1.0 / 3.0);
  const double a = alpha;
  const double c2 = c * c, c3 = c2 * c;
  const double X3 = X * X * X;
  double t1 = 0, t2 = 0, t3 = 0;
  if (which == EdgeDegree::N) {
    t1 = (c - 1.0) / detail::kCbrt2 * aip;
    t2 = (2.0 - 10.0 * c + 5.0 * c2 - 5.0 * a) / (10.0 * detail::kCbrt4) * X * ai -
         2.0 * X * X / (10.0 * detail::kCbrt4) * aip;
    t3 = ((5.0 * a - 15.0 * c * a + 5.0 * c3 - 15.0 * c2 + 6.0 * c - 6.0 + (6.0 - 6.0 * c) * X3) * ai +
          (6.0 + a * (5.0 - 15.0 * c) - 6.0 * c - 15.0 * c2 + 5.0 * c3) * X * aip) /
         60.0;
  } else {
    t1 = (c - 3.0) / detail::kCbrt2 * aip;
    t2 = (42.0 - 30.0 * c + 5.0 * c2 - 5.0 * a) / (10.0 * detail::kCbrt4) * X * ai -
         2.0 * X * X / (10.0 * detail::kCbrt4) * aip;
    t3 = ((5.0 * c3 - 45.0 * c2 + 126.0 * c - 118.0 + a * (35.0 - 15.0 * c) + (18.0 - 6.0 * c) * X3) * ai +
          (-102.0 - 5.0 * a * (3.0 * c - 7.0) + 114.0 * c - 45.0 * c2 + 5.0 * c3) * X * aip) /
         60.0;
  }
  double sum = ai;
  if (order >= 1) sum += t1 * m13;
  if (order >= 2) sum += t2 * m13 * m13;
  if (order >= 3) sum += t3 / nn;
  const int m = (which == EdgeDegree::N) ? n : n + 1;
  return detail::parity(m) * std::pow(2.0, -a - 1.0 / 3.0) * std::pow(double(m), -1.0 / 3.0) * sum;
}

}  // namespace ermt
