#pragma once

// Hastings-McLeod solution of Painleve II, q'' = s q + 2 q^3, with
// q(s) ~ Ai(s) as s -> +inf and q(s) ~ sqrt(-s/2) as s -> -inf, together with
// the auxiliary functions entering the finite-n corrections to F2.
//
// The auxiliary columns are the inner products
//   u_i = (Q, x^i Ai),  v_i = (Q, x^i Ai'),  w_i = (P, x^i Ai')
// on L^2(s, inf), where Q = (1 - K_Ai)^{-1} Ai and P = (1 - K_Ai)^{-1} Ai'.
// They satisfy closed first-order relations driven by q and p = q' + q u0:
//   u0' = -q^2       v0' = -q p       w0' = -p^2
//   u1' = -q Q1      v1' = -q P1      w1' = -p P1      u2' = -q Q2
// with Q1 = s q - v0 q + u0 p, P1 = s p - w0 q + v0 p,
//      Q2 = s Q1 - q (v1 - v0^2 + u0 w0) + p u1,
// and i_int = u0 = int_s^inf q^2, j_int = int_s^inf (x - s) q^2, F2 = exp(-j_int).

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ermt/airy.hpp"
#include "ermt/chebyshev.hpp"
#include "ermt/errors.hpp"

namespace ermt {

enum class Column { S, Q, QP, U0, U1, U2, V0, V1, W0, W1, I_INT, J_INT, F2 };

inline constexpr std::array<const char*, 13> kColumnNames = {
    "s", "q", "qp", "u0", "u1", "u2", "v0", "v1", "w0", "w1", "i_int", "j_int", "f2"};

struct PainleveTable {
  std::vector<double> s, q, qp, u0, u1, u2, v0, v1, w0, w1, i_int, j_int, f2;

  std::size_t size() const { return s.size(); }
  bool empty() const { return s.empty(); }
  double s_min() const { return s.front(); }
  double s_max() const { return s.back(); }
  double step() const { return (s.back() - s.front()) / static_cast<double>(s.size() - 1); }
  bool has_auxiliary() const { return f2.size() == s.size() && !s.empty(); }

  std::vector<double>& column(Column c) {
    switch (c) {
      case Column::S: return s;
      case Column::Q: return q;
      case Column::QP: return qp;
      case Column::U0: return u0;
      case Column::U1: return u1;
      case Column::U2: return u2;
      case Column::V0: return v0;
      case Column::V1: return v1;
      case Column::W0: return w0;
      case Column::W1: return w1;
      case Column::I_INT: return i_int;
      case Column::J_INT: return j_int;
      case Column::F2: return f2;
    }
    return s;
  }
  const std::vector<double>& column(Column c) const { return const_cast<PainleveTable*>(this)->column(c); }
};

struct PainleveOptions {
  double s_min = -10.0;
  double s_max = 8.0;
  double step = 0.005;
  double tol = 1e-8;
  int collocation_points = 240;
  int max_newton = 60;
};

namespace detail {

// Left-tail asymptotics q ~ sqrt(-s/2) (1 + 1/(8 s^3) - 73/(128 s^6) + 10657/(1024 s^9)).
inline double hm_left_asymptote(double s) {
  const double r = std::sqrt(-0.5 * s);
  const double s3 = s * s * s;
  return r * (1.0 + 1.0 / (8.0 * s3) - 73.0 / (128.0 * s3 * s3) + 10657.0 / (1024.0 * s3 * s3 * s3));
}

inline double hm_left_asymptote_slope(double s) {
  const double r = std::sqrt(-0.5 * s);
  const double s3 = s * s * s;
  const double series = 1.0 + 1.0 / (8.0 * s3) - 73.0 / (128.0 * s3 * s3) + 10657.0 / (1024.0 * s3 * s3 * s3);
  const double dseries = -3.0 / (8.0 * s3 * s) + 6.0 * 73.0 / (128.0 * s3 * s3 * s) -
                         9.0 * 10657.0 / (1024.0 * s3 * s3 * s3 * s);
  return -series / (4.0 * r) + r * dseries;
}

// Weights w_0..w_5 with int_0^1 f(x) dx ~ sum_i w_i f(offset + i) (unit spacing).
inline std::array<double, 6> interval_weights(int offset) {
  Eigen::Matrix<double, 6, 6> V;
  Eigen::Matrix<double, 6, 1> rhs;
  for (int p = 0; p < 6; ++p) {
    for (int i = 0; i < 6; ++i) V(p, i) = std::pow(double(offset + i), p);
    rhs[p] = 1.0 / (p + 1);
  }
  const Eigen::Matrix<double, 6, 1> w = V.fullPivLu().solve(rhs);
  return {w[0], w[1], w[2], w[3], w[4], w[5]};
}

// Cumulative integral int_{s_k}^{s_M} f on a uniform grid (6th order).
inline std::vector<double> tail_integral(const std::vector<double>& f, double h) {
  static const std::array<std::array<double, 6>, 6> weights = [] {
    std::array<std::array<double, 6>, 6> w{};
    for (int o = 0; o < 6; ++o) w[o] = interval_weights(-o);
    return w;
  }();
  const int M = static_cast<int>(f.size()) - 1;
  require(M >= 5, "tail_integral: grid too short");
  std::vector<double> out(M + 1, 0.0);
  for (int k = M - 1; k >= 0; --k) {
    // stencil k-2..k+3 where possible, shifted inside the grid near the ends
    int start = std::clamp(k - 2, 0, M - 5);
    const int o = k - start;
    const auto& w = weights[o];
    double seg = 0.0;
    for (int i = 0; i < 6; ++i) seg += w[i] * f[start + i];
    out[k] = out[k + 1] + h * seg;
  }
  return out;
}

struct Derivatives {
  double q, qp, u0, u1, u2, v0, v1, w0, w1, i_int, j_int, f2;
};

inline Derivatives node_derivatives(const PainleveTable& t, std::size_t k) {
  const double s = t.s[k], q = t.q[k], u0 = t.u0[k], v0 = t.v0[k], w0 = t.w0[k];
  const double p = t.qp[k] + q * u0;
  const double Q1 = s * q - v0 * q + u0 * p;
  const double P1 = s * p - w0 * q + v0 * p;
  const double v1t = t.v1[k] - v0 * v0 + u0 * w0;
  const double Q2 = s * Q1 - q * v1t + p * t.u1[k];
  Derivatives d{};
  d.q = t.qp[k];
  d.qp = s * q + 2.0 * q * q * q;
  d.u0 = -q * q;
  d.v0 = -q * p;
  d.w0 = -p * p;
  d.u1 = -q * Q1;
  d.v1 = -q * P1;
  d.w1 = -p * P1;
  d.u2 = -q * Q2;
  d.i_int = -q * q;
  d.j_int = -u0;
  d.f2 = t.f2[k] * u0;
  return d;
}

inline double derivative_of(const Derivatives& d, Column c) {
  switch (c) {
    case Column::Q: return d.q;
    case Column::QP: return d.qp;
    case Column::U0: return d.u0;
    case Column::U1: return d.u1;
    case Column::U2: return d.u2;
    case Column::V0: return d.v0;
    case Column::V1: return d.v1;
    case Column::W0: return d.w0;
    case Column::W1: return d.w1;
    case Column::I_INT: return d.i_int;
    case Column::J_INT: return d.j_int;
    case Column::F2: return d.f2;
    case Column::S: return 1.0;
  }
  return 0.0;
}

inline void fill_auxiliary(PainleveTable& t, double h) {
  const std::size_t M = t.size();
  std::vector<double> f(M);
  auto integrate = [&](auto&& integrand) {
    for (std::size_t k = 0; k < M; ++k) f[k] = integrand(k);
    return tail_integral(f, h);
  };
  t.u0 = integrate([&](std::size_t k) { return t.q[k] * t.q[k]; });
  std::vector<double> p(M);
  for (std::size_t k = 0; k < M; ++k) p[k] = t.qp[k] + t.q[k] * t.u0[k];
  t.v0 = integrate([&](std::size_t k) { return t.q[k] * p[k]; });
  t.w0 = integrate([&](std::size_t k) { return p[k] * p[k]; });
  std::vector<double> Q1(M), P1(M);
  for (std::size_t k = 0; k < M; ++k) {
    Q1[k] = t.s[k] * t.q[k] - t.v0[k] * t.q[k] + t.u0[k] * p[k];
    P1[k] = t.s[k] * p[k] - t.w0[k] * t.q[k] + t.v0[k] * p[k];
  }
  t.u1 = integrate([&](std::size_t k) { return t.q[k] * Q1[k]; });
  t.v1 = integrate([&](std::size_t k) { return t.q[k] * P1[k]; });
  t.w1 = integrate([&](std::size_t k) { return p[k] * P1[k]; });
  t.u2 = integrate([&](std::size_t k) {
    const double v1t = t.v1[k] - t.v0[k] * t.v0[k] + t.u0[k] * t.w0[k];
    return t.q[k] * (t.s[k] * Q1[k] - t.q[k] * v1t + p[k] * t.u1[k]);
  });
  t.i_int = t.u0;
  t.j_int = tail_integral(t.u0, h);
  t.f2.resize(M);
  for (std::size_t k = 0; k < M; ++k) t.f2[k] = std::exp(-t.j_int[k]);
}

inline std::size_t locate(const PainleveTable& t, double s) {
  const double pos = (s - t.s_min()) / t.step();
  auto k = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
  return std::min(k, t.size() - 2);
}

}  // namespace detail

/// max |q'' - s q - 2 q^3| over the interior of the grid, with q'' from the
/// 7-point (6th order) central difference of the q column.
inline double ode_residual(const PainleveTable& t, double lo = -INFINITY, double hi = INFINITY) {
  const double h = t.step();
  double worst = 0.0;
  for (std::size_t k = 3; k + 3 < t.size(); ++k) {
    if (t.s[k] < lo || t.s[k] > hi) continue;
    const auto& q = t.q;
    const double qpp = (2 * q[k - 3] - 27 * q[k - 2] + 270 * q[k - 1] - 490 * q[k] + 270 * q[k + 1] -
                        27 * q[k + 2] + 2 * q[k + 3]) /
                       (180 * h * h);
    worst = std::max(worst, std::fabs(qpp - t.s[k] * q[k] - 2 * q[k] * q[k] * q[k]));
  }
  return worst;
}

/// Solve the Hastings-McLeod boundary-value problem on [s_min, s_max] by
/// Chebyshev collocation with damped Newton iteration, then sample q and q'
/// on a uniform grid of the given step. Right condition q(s_max) = Ai(s_max);
/// left condition q'(s_min) equal to the slope of the left-tail asymptotic series.
inline PainleveTable solve_hastings_mcleod(double s_min, double s_max, double tol,
                                           const PainleveOptions& opts = {}) {
  detail::require(s_min < -2.0, "solve_hastings_mcleod: s_min must be below -2");
  detail::require(s_max > 5.0, "solve_hastings_mcleod: s_max must exceed 5");
  detail::require(tol > 0.0, "solve_hastings_mcleod: tol must be positive");
  detail::require(opts.step > 0.0 && opts.step <= 0.01, "solve_hastings_mcleod: step must be in (0, 0.01]");
  const int N = opts.collocation_points;
  const auto g = chebyshev_grid(N, s_min, s_max);
  const Eigen::MatrixXd& D = g.d1;
  const Eigen::MatrixXd D2 = D * D;
  const Eigen::VectorXd& s = g.nodes;

  Eigen::VectorXd q(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double a = airy(s[j]).ai;
    q[j] = std::sqrt(std::max(-0.5 * s[j], 0.0) + a * a);
  }
  const double right = airy(s_max).ai;
  const double left_slope = detail::hm_left_asymptote_slope(s_min);

  auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r = D2 * v - (s.array() * v.array() + 2.0 * v.array().cube()).matrix();
    r[0] = v[0] - right;
    r[N] = D.row(N).dot(v) - left_slope;
    return r;
  };

  Eigen::VectorXd r = residual(q);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  int it = 0;
  double last_step = INFINITY;
  for (; it < opts.max_newton; ++it) {
    Eigen::MatrixXd J = D2;
    for (int j = 0; j <= N; ++j) J(j, j) -= s[j] + 6.0 * q[j] * q[j];
    J.row(0).setZero();
    J(0, 0) = 1.0;
    J.row(N) = D.row(N);
    const Eigen::VectorXd dq = J.partialPivLu().solve(-r);
    double lambda = 1.0;
    Eigen::VectorXd trial;
    Eigen::VectorXd rt;
    double tnorm = INFINITY;
    for (int ls = 0; ls < 30; ++ls) {
      trial = q + lambda * dq;
      rt = residual(trial);
      tnorm = rt.lpNorm<Eigen::Infinity>();
      if (tnorm < rnorm || lambda < 1e-6) break;
      lambda *= 0.5;
    }
    last_step = (lambda * dq).lpNorm<Eigen::Infinity>();
    q = trial;
    r = rt;
    rnorm = tnorm;
    if (last_step < 1e-14 * (1.0 + q.lpNorm<Eigen::Infinity>())) break;
  }
  // Collocation residuals carry roundoff amplified by D2 (~N^4); the Newton
  // update size is the meaningful convergence measure.
  if (!(last_step < 1e-10) || !std::isfinite(rnorm)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "solve_hastings_mcleod: Newton did not converge (max residual %.3g, last step %.3g, %d iterations)",
                  rnorm, last_step, it);
    throw ConvergenceError(buf);
  }
  const Eigen::VectorXd dq = D * q;

  PainleveTable t;
  const auto M = static_cast<std::size_t>(std::llround((s_max - s_min) / opts.step));
  t.s.resize(M + 1);
  t.q.resize(M + 1);
  t.qp.resize(M + 1);
  for (std::size_t k = 0; k <= M; ++k) {
    const double sk = (k == M) ? s_max : s_min + (s_max - s_min) * double(k) / double(M);
    t.s[k] = sk;
    t.q[k] = chebyshev_interpolate(g, q, sk);
    t.qp[k] = chebyshev_interpolate(g, dq, sk);
  }
  const double resid = ode_residual(t);
  if (!(resid <= tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "solve_hastings_mcleod: ODE residual %.3g above tolerance after %d iterations",
                  resid, it);
    throw ConvergenceError(buf);
  }
  return t;
}

/// Fill the auxiliary columns of a table holding s, q, q' on a uniform grid.
/// All columns vanish at s_max. Throws GridTooCoarseError when integrating on
/// the grid with every other point removed changes any column by more than 1e-8.
inline PainleveTable auxiliary_integrals(PainleveTable table) {
  detail::require(table.size() >= 13, "auxiliary_integrals: table too short");
  detail::require(table.q.size() == table.size() && table.qp.size() == table.size(),
                  "auxiliary_integrals: q and qp must be populated");
  const double h = table.step();
  detail::fill_auxiliary(table, h);

  // Every other node, anchored at s_max where the tail integrals start.
  const std::size_t first = (table.size() - 1) % 2;
  PainleveTable coarse;
  for (std::size_t k = first; k < table.size(); k += 2) {
    coarse.s.push_back(table.s[k]);
    coarse.q.push_back(table.q[k]);
    coarse.qp.push_back(table.qp[k]);
  }
  detail::fill_auxiliary(coarse, 2.0 * h);
  double worst = 0.0;
  for (auto c : {Column::U0, Column::U1, Column::U2, Column::V0, Column::V1, Column::W0, Column::W1, Column::J_INT,
                 Column::F2}) {
    const auto& fine = table.column(c);
    const auto& crs = coarse.column(c);
    for (std::size_t k = 0; k < crs.size(); ++k) worst = std::max(worst, std::fabs(fine[first + 2 * k] - crs[k]));
  }
  if (worst > 1e-8) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "auxiliary_integrals: step halving changes the integrals by %.3g", worst);
    throw GridTooCoarseError(buf);
  }
  return table;
}

/// Full table with default options.
inline PainleveTable build_painleve_table(const PainleveOptions& opts = {}) {
  return auxiliary_integrals(solve_hastings_mcleod(opts.s_min, opts.s_max, opts.tol, opts));
}

/// Cubic Hermite interpolation of one column, using the exact derivative
/// relations for the nodal slopes.
inline double table_value(const PainleveTable& t, Column c, double s) {
  detail::require(t.has_auxiliary(), "table_value: auxiliary columns missing");
  detail::require_finite(s, "table_value: non-finite s");
  const double tiny = 1e-12 * (1.0 + std::fabs(t.s_max()) + std::fabs(t.s_min()));
  if (s < t.s_min() - tiny || s > t.s_max() + tiny) throw std::out_of_range("table_value: s outside table range");
  s = std::clamp(s, t.s_min(), t.s_max());
  if (c == Column::S) return s;
  const std::size_t k = detail::locate(t, s);
  const double h = t.s[k + 1] - t.s[k];
  const double x = (s - t.s[k]) / h;
  const auto& col = t.column(c);
  const double y0 = col[k], y1 = col[k + 1];
  double d0 = detail::derivative_of(detail::node_derivatives(t, k), c) * h;
  double d1 = detail::derivative_of(detail::node_derivatives(t, k + 1), c) * h;
  if (c == Column::F2) {
    // Fritsch-Carlson limiter keeps the interpolant monotone
    const double delta = y1 - y0;
    if (delta <= 0.0) {
      d0 = d1 = 0.0;
    } else {
      d0 = std::max(d0, 0.0);
      d1 = std::max(d1, 0.0);
      const double a = d0 / delta, b = d1 / delta, r = a * a + b * b;
      if (r > 9.0) {
        const double tau = 3.0 / std::sqrt(r);
        d0 *= tau;
        d1 *= tau;
      }
    }
  }
  const double x2 = x * x, x3 = x2 * x;
  return y0 + (3 * x2 - 2 * x3) * (y1 - y0) + (x3 - 2 * x2 + x) * d0 + (x3 - x2) * d1;
}

/// Tracy-Widom GUE distribution F2(s) = exp(-int_s^inf (x - s) q(x)^2 dx).
inline double tw2_cdf(const PainleveTable& t, double s) {
  return std::clamp(table_value(t, Column::F2, s), 0.0, 1.0);
}

enum class EKind { G, L, Universal };

/// kappa(c) = -20 c^2 + 3 (GUE and the shared universal form) or 20 c^2 - 2 (LUE).
inline double e_kappa(EKind kind, double c) {
  if (kind == EKind::L) return 20.0 * c * c - 2.0;
  return -20.0 * c * c + 3.0;
}

/// E(s) = 2 w1 - 3 u2 + kappa v0 + u1 v0 - u0 v1 + u0 v0^2 - u0^2 w0.
inline double e_function(const PainleveTable& t, double s, EKind kind, double c) {
  if (kind == EKind::Universal) detail::require(std::fabs(c) <= 0.5, "e_function: universal mode needs |c| <= 1/2");
  const double u0 = table_value(t, Column::U0, s), u1 = table_value(t, Column::U1, s);
  const double u2 = table_value(t, Column::U2, s), v0 = table_value(t, Column::V0, s);
  const double v1 = table_value(t, Column::V1, s), w0 = table_value(t, Column::W0, s);
  const double w1 = table_value(t, Column::W1, s);
  return 2.0 * w1 - 3.0 * u2 + e_kappa(kind, c) * v0 + u1 * v0 - u0 * v1 + u0 * v0 * v0 - u0 * u0 * w0;
}

/// CSV with a `# edgeworth-rmt v1` comment line, a header row and one row per
/// grid point, values printed with 17 significant digits.
inline void write_table_csv(const PainleveTable& t, std::ostream& os) {
  os << "# edgeworth-rmt v1\n";
  for (std::size_t i = 0; i < kColumnNames.size(); ++i) os << (i ? "," : "") << kColumnNames[i];
  os << '\n';
  char buf[32];
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (std::size_t i = 0; i < kColumnNames.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", t.column(static_cast<Column>(i))[k]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

inline PainleveTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# edgeworth-rmt v1", 0) != 0) {
    throw std::runtime_error("read_table_csv: missing '# edgeworth-rmt v1' header");
  }
  if (!std::getline(is, line)) throw std::runtime_error("read_table_csv: missing column row");
  {
    std::stringstream hs(line);
    std::string name;
    for (const char* expect : kColumnNames) {
      if (!std::getline(hs, name, ',') || name != expect) {
        throw std::runtime_error("read_table_csv: unexpected column layout");
      }
    }
  }
  PainleveTable t;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ls(line);
    std::string cell;
    for (std::size_t i = 0; i < kColumnNames.size(); ++i) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("read_table_csv: short row");
      t.column(static_cast<Column>(i)).push_back(std::stod(cell));
    }
  }
  if (t.size() < 13) throw std::runtime_error("read_table_csv: too few rows");
  return t;
}

}  // namespace ermt
