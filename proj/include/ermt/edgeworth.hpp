#pragma once

// Finite-n edge expansion of the largest-eigenvalue distribution:
//   F_n(t(s)) = F2(s) {1 + a u0(s) n^{-1/3} + b E(s) n^{-2/3}} + O(n^{-1})
// with (a, b) = (c_G, -1/20) for GUE and (2^{2/3} c_L, 2^{1/3}/10) for LUE.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ermt/ensemble.hpp"
#include "ermt/errors.hpp"
#include "ermt/fredholm.hpp"
#include "ermt/painleve.hpp"
#include "ermt/parallel.hpp"
#include "ermt/stats.hpp"

namespace ermt {

struct TunedConstants {
  double c_g = 0.0;
  double c_l = 0.0;
  double a_g = 0.0;
  double a_l = 0.0;
  double b_g = -1.0 / 20.0;
  double b_l = 0.0;
};

inline TunedConstants tuned_constants(double c_g, double c_l) {
  TunedConstants k;
  k.c_g = c_g;
  k.c_l = c_l;
  k.a_g = c_g;
  k.a_l = std::cbrt(4.0) * c_l;
  k.b_g = -1.0 / 20.0;
  k.b_l = std::cbrt(2.0) / 10.0;
  return k;
}

/// Constants on the circle c_G^2 + c_L^2 = 1/4; `sign` picks the branch of
/// the partner constant.
inline TunedConstants universal_constants(Ensemble kind, double c, double sign = 1.0) {
  detail::require(std::fabs(c) <= 0.5, "universal_constants: |c| must not exceed 1/2");
  const double partner = std::copysign(std::sqrt(std::max(0.0, 0.25 - c * c)), sign);
  return kind == Ensemble::GUE ? tuned_constants(c, partner) : tuned_constants(partner, c);
}

enum class ExpansionMode { PerEnsemble, Universal };

struct ExpansionResult {
  double s = 0.0;
  double leading = 0.0;  // F2(s)
  double corr1 = 0.0;    // a u0 F2 n^{-1/3}
  double corr2 = 0.0;    // b E F2 n^{-2/3}
  double total = 0.0;
  bool overshoot = false;  // total outside [0, 1]
};

/// Expansion of P(lambda_max <= t(s)) truncated after the n^{-order/3} term
/// (order 0..2). In universal mode spec.c is c_G (GUE) or c_L (LUE) and the
/// correction function is the one shared by both ensembles on the circle.
inline ExpansionResult edgeworth_cdf(const EnsembleSpec& spec, double s, const PainleveTable& table,
                                     ExpansionMode mode = ExpansionMode::PerEnsemble, int order = 2) {
  spec.validate();
  detail::require(order >= 0 && order <= 2, "edgeworth_cdf: order must be in 0..2");
  const bool gue = spec.kind == Ensemble::GUE;
  double a = 0.0, b = 0.0, E = 0.0;
  const double u0 = table_value(table, Column::U0, s);
  if (mode == ExpansionMode::Universal) {
    const auto k = universal_constants(spec.kind, spec.c);
    a = gue ? k.a_g : k.a_l;
    b = gue ? k.b_g : k.b_l;
    E = e_function(table, s, EKind::Universal, k.c_g);
  } else {
    const auto k = gue ? tuned_constants(spec.c, 0.0) : tuned_constants(0.0, spec.c);
    a = gue ? k.a_g : k.a_l;
    b = gue ? k.b_g : k.b_l;
    E = e_function(table, s, gue ? EKind::G : EKind::L, spec.c);
  }
  const double m13 = std::pow(double(spec.n), -1.0 / 3.0);
  ExpansionResult r;
  r.s = s;
  r.leading = tw2_cdf(table, s);
  if (order >= 1) r.corr1 = a * u0 * r.leading * m13;
  if (order >= 2) r.corr2 = b * E * r.leading * m13 * m13;
  r.total = r.leading + r.corr1 + r.corr2;
  r.overshoot = r.total < 0.0 || r.total > 1.0;
  return r;
}

struct ConvergenceReport {
  std::vector<int> n;
  std::vector<double> sup_error;
  double slope = 0.0;
};

/// For each n: sup over s_grid of |exact_cdf(t(s)) - edgeworth total|, and
/// the least-squares log-log slope of the sup errors against n.
inline ConvergenceReport convergence_report(EnsembleSpec spec, const std::vector<int>& n_values,
                                            const std::vector<double>& s_grid, const PainleveTable& table,
                                            int order = 2, ExpansionMode mode = ExpansionMode::PerEnsemble) {
  detail::require(n_values.size() >= 3, "convergence_report: need at least three n values");
  detail::require(!s_grid.empty(), "convergence_report: empty s grid");
  ConvergenceReport rep;
  rep.n = n_values;
  rep.sup_error.assign(n_values.size(), 0.0);
  const std::size_t ns = s_grid.size();
  std::vector<double> errs(n_values.size() * ns);
  parallel_for(errs.size(), [&](std::size_t idx) {
    EnsembleSpec sp = spec;
    sp.n = n_values[idx / ns];
    const double s = s_grid[idx % ns];
    const double exact = exact_cdf_scaled(sp, s);
    errs[idx] = std::fabs(exact - edgeworth_cdf(sp, s, table, mode, order).total);
  });
  std::vector<double> x;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    for (std::size_t j = 0; j < ns; ++j) rep.sup_error[i] = std::max(rep.sup_error[i], errs[i * ns + j]);
    x.push_back(n_values[i]);
  }
  rep.slope = loglog_slope(x, rep.sup_error);
  return rep;
}

/// count equally spaced points on [lo, hi].
inline std::vector<double> linspace(double lo, double hi, int count) {
  detail::require(count >= 2, "linspace: need at least two points");
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace ermt
