#pragma once

#include <cmath>
#include <string>

#include "ermt/errors.hpp"

namespace ermt {

enum class Ensemble { GUE, LUE };

inline const char* to_string(Ensemble e) { return e == Ensemble::GUE ? "gue" : "lue"; }

/// n is the matrix size; alpha is the Laguerre parameter (ignored for GUE);
/// c is the edge tuning constant (c_G or c_L).
struct EnsembleSpec {
  Ensemble kind = Ensemble::GUE;
  int n = 2;
  double alpha = 0.0;
  double c = 0.0;

  void validate() const {
    detail::require(n >= 2, "EnsembleSpec: n must be at least 2");
    detail::require(std::fabs(c) <= 5.0, "EnsembleSpec: |c| must not exceed 5");
    if (kind == Ensemble::LUE) detail::require(alpha > -1.0, "EnsembleSpec: alpha must exceed -1");
  }
};

/// Affine edge scaling t = center + scale * s:
///   GUE  t = sqrt(2(n + c_G)) + 2^{-1/2} n^{-1/6} s
///   LUE  t = 4(n + c_L) + 2 alpha + 2 (2n)^{1/3} s
struct EdgeTransform {
  EnsembleSpec spec;
  double center = 0.0;
  double scale = 1.0;

  double to_t(double s) const { return center + scale * s; }
  double to_s(double t) const { return (t - center) / scale; }
  double jacobian() const { return scale; }
};

inline EdgeTransform edge_transform(const EnsembleSpec& spec) {
  spec.validate();
  EdgeTransform tr;
  tr.spec = spec;
  const double n = spec.n;
  if (spec.kind == Ensemble::GUE) {
    detail::require(n + spec.c > 0.0, "edge_transform: n + c_G must be positive");
    tr.center = std::sqrt(2.0 * (n + spec.c));
    tr.scale = std::pow(n, -1.0 / 6.0) / std::sqrt(2.0);
  } else {
    tr.center = 4.0 * (n + spec.c) + 2.0 * spec.alpha;
    tr.scale = 2.0 * std::cbrt(2.0 * n);
  }
  return tr;
}

inline double transform(const EnsembleSpec& spec, double s) { return edge_transform(spec).to_t(s); }
inline double inverse_transform(const EnsembleSpec& spec, double t) { return edge_transform(spec).to_s(t); }

}  // namespace ermt
