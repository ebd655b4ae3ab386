#pragma once

// Chebyshev-Gauss-Lobatto collocation on an interval [a, b].

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "ermt/errors.hpp"

namespace ermt {

struct ChebyshevGrid {
  double a = -1.0;
  double b = 1.0;
  Eigen::VectorXd nodes;  // descending: nodes[0] = b, nodes[N] = a
  Eigen::MatrixXd d1;     // first-derivative matrix on [a, b]
};

/// N+1 Lobatto points on [a, b] with the differentiation matrix; the diagonal
/// is formed by the negative-sum trick so that D applied to constants is zero.
inline ChebyshevGrid chebyshev_grid(int N, double a, double b) {
  detail::require(N >= 2, "chebyshev_grid: need at least 3 points");
  detail::require(a < b, "chebyshev_grid: empty interval");
  ChebyshevGrid g;
  g.a = a;
  g.b = b;
  Eigen::VectorXd x(N + 1);
  for (int j = 0; j <= N; ++j) x[j] = std::sin(std::numbers::pi * (N - 2.0 * j) / (2.0 * N));
  Eigen::VectorXd c = Eigen::VectorXd::Ones(N + 1);
  c[0] = c[N] = 2.0;
  for (int j = 1; j <= N; j += 2) c[j] = -c[j];
  Eigen::MatrixXd D(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    double row = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      D(i, j) = (c[i] / c[j]) / (x[i] - x[j]);
      row += D(i, j);
    }
    D(i, i) = -row;
  }
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  g.nodes = (mid + half * x.array()).matrix();
  g.d1 = D / half;
  return g;
}

/// Barycentric interpolation of nodal values on a Lobatto grid.
inline double chebyshev_interpolate(const ChebyshevGrid& g, const Eigen::VectorXd& values, double s) {
  const int N = static_cast<int>(g.nodes.size()) - 1;
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= N; ++j) {
    const double diff = s - g.nodes[j];
    if (diff == 0.0) return values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == N) w *= 0.5;
    w /= diff;
    num += w * values[j];
    den += w;
  }
  return num / den;
}

}  // namespace ermt
