#pragma once

// Fredholm determinants det(I - K) on L^2(s, inf) by Nystrom discretization
// with a Gauss-Legendre rule on a truncated interval (s, T):
//   det(delta_ij - sqrt(w_i) K(x_i, x_j) sqrt(w_j)).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ermt/airy.hpp"
#include "ermt/ensemble.hpp"
#include "ermt/errors.hpp"
#include "ermt/kernels.hpp"
#include "ermt/orthopoly.hpp"
#include "ermt/quadrature.hpp"

namespace ermt {

using KernelFn = std::function<double(double, double)>;

inline constexpr double kDoublingTol = 1e-8;

/// Determinant on a fixed rule, without the doubling check.
inline double nystrom_det_fixed(const KernelFn& kernel, const QuadratureRule& rule) {
  const int m = rule.size();
  Eigen::MatrixXd A(m, m);
  Eigen::VectorXd sw(m);
  for (int i = 0; i < m; ++i) sw[i] = std::sqrt(rule.weights[i]);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double k = kernel(rule.nodes[i], rule.nodes[j]);
      if (!std::isfinite(k)) throw std::domain_error("nystrom_det: non-finite kernel value");
      const double v = -sw[i] * k * sw[j];
      A(i, j) = v;
      A(j, i) = v;
    }
    A(i, i) += 1.0;
  }
  return A.partialPivLu().determinant();
}

/// det(I - K) on (s, inf) with a symmetric kernel, using m Gauss-Legendre
/// nodes on (s, T) and again 2m nodes; returns the 2m value, or throws
/// ConvergenceError when the two differ by more than 1e-8.
inline double nystrom_det(const KernelFn& kernel, double s, int m, double T) {
  detail::require(m >= 20, "nystrom_det: need at least 20 nodes");
  detail::require(T > s, "nystrom_det: truncation point must exceed s");
  const double d1 = nystrom_det_fixed(kernel, gauss_legendre(m, s, T));
  const double d2 = nystrom_det_fixed(kernel, gauss_legendre(2 * m, s, T));
  if (std::fabs(d1 - d2) > kDoublingTol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "nystrom_det: node doubling changed the determinant by %.3g", std::fabs(d1 - d2));
    throw ConvergenceError(buf);
  }
  return d2;
}

/// F2(s) = det(I - K_Ai) on (s, inf), default m = 120 and T = s + 16.
/// Airy values are computed once per node.
inline double airy_det(double s, int m = 120, double T = NAN) {
  if (std::isnan(T)) T = s + 16.0;
  detail::require(m >= 20, "airy_det: need at least 20 nodes");
  auto fixed = [&](int nodes) {
    const auto rule = gauss_legendre(nodes, s, T);
    std::vector<AiryValue> a(nodes);
    Eigen::VectorXd sw(nodes);
    for (int i = 0; i < nodes; ++i) {
      a[i] = airy(rule.nodes[i]);
      sw[i] = std::sqrt(rule.weights[i]);
    }
    Eigen::MatrixXd A(nodes, nodes);
    for (int i = 0; i < nodes; ++i) {
      const double xi = rule.nodes[i];
      A(i, i) = 1.0 - sw[i] * sw[i] * (a[i].aip * a[i].aip - xi * a[i].ai * a[i].ai);
      for (int j = i + 1; j < nodes; ++j) {
        const double k = (a[i].ai * a[j].aip - a[j].ai * a[i].aip) / (xi - rule.nodes[j]);
        A(i, j) = A(j, i) = -sw[i] * k * sw[j];
      }
    }
    return A.partialPivLu().determinant();
  };
  const double d1 = fixed(m), d2 = fixed(2 * m);
  if (std::fabs(d1 - d2) > kDoublingTol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "airy_det: node doubling changed the determinant by %.3g", std::fabs(d1 - d2));
    throw ConvergenceError(buf);
  }
  return d2;
}

struct ExactCdfOptions {
  int m = 80;
  double truncation_scales = 20.0;  // T = t + truncation_scales * edge scale
};

namespace detail {

// det(I - K_n) on (lo, hi) in the Gram form det(I_n - Phi^T W Phi), where
// Phi_ik = phi_k(x_i) are the orthonormal functions whose span defines K_n.
inline double gram_det(const EnsembleSpec& spec, const QuadratureRule& rule) {
  const int n = spec.n, m = rule.size();
  Eigen::MatrixXd Phi(m, n);
  for (int i = 0; i < m; ++i) {
    const auto f = spec.kind == Ensemble::GUE ? hermite_functions(n, rule.nodes[i])
                                              : laguerre_functions(n, spec.alpha, rule.nodes[i]);
    const double sw = std::sqrt(rule.weights[i]);
    for (int k = 0; k < n; ++k) Phi(i, k) = sw * f[k];
  }
  Eigen::MatrixXd G = -Phi.transpose() * Phi;
  G.diagonal().array() += 1.0;
  return G.partialPivLu().determinant();
}

}  // namespace detail

/// Distribution function of the largest eigenvalue of GUE_n / LUE_n,
/// P(lambda_max <= t) = det(I - K_n) on (t, inf).
inline double exact_cdf(const EnsembleSpec& spec, double t, const ExactCdfOptions& opts = {}) {
  spec.validate();
  detail::require_finite(t, "exact_cdf: non-finite t");
  detail::require(opts.m >= 20, "exact_cdf: need at least 20 nodes");
  const auto tr = edge_transform(spec);
  if (spec.kind == Ensemble::LUE && t <= 0.0) return 0.0;  // all eigenvalues are positive
  const double lo = t;
  const double hi = t + opts.truncation_scales * tr.scale;
  const double d1 = detail::gram_det(spec, gauss_legendre(opts.m, lo, hi));
  const double d2 = detail::gram_det(spec, gauss_legendre(2 * opts.m, lo, hi));
  if (std::fabs(d1 - d2) > kDoublingTol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "exact_cdf: node doubling changed the determinant by %.3g", std::fabs(d1 - d2));
    throw ConvergenceError(buf);
  }
  return std::clamp(d2, 0.0, 1.0);
}

/// exact_cdf at the edge-scaled point s, i.e. at t = transform(spec, s).
inline double exact_cdf_scaled(const EnsembleSpec& spec, double s, const ExactCdfOptions& opts = {}) {
  return exact_cdf(spec, transform(spec, s), opts);
}

}  // namespace ermt
