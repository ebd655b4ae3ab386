#pragma once

// Airy function Ai and its derivative on the real line.
//
// Evaluation regions (all arithmetic in long double):
//   -5 <= x <= 2    Maclaurin series
//   2 < x < 9,      Taylor expansion about x0 = +-9, seeded by the asymptotic
//   -9 < x < -5     expansion at x0 (backward for x > 0, where Ai is the
//                   growing solution, so the series stays well conditioned)
//   |x| >= 9        asymptotic expansions (exponential for x > 0,
//                   modulus/phase form for x < 0)

#include <cmath>
#include <numbers>
#include <vector>

#include "ermt/errors.hpp"
#include "ermt/quadrature.hpp"

namespace ermt {

struct AiryValue {
  double ai = 0.0;
  double aip = 0.0;
};

namespace detail {

using ld = long double;

inline constexpr ld kAi0 = 0.355028053887817239260063186004183176L;   // 3^{-2/3}/Gamma(2/3)
inline constexpr ld kAip0 = 0.258819403792806798405183560189203963L;  // 3^{-1/3}/Gamma(1/3)
inline constexpr ld kPi = 3.14159265358979323846264338327950288L;

struct AiryLd {
  ld ai;
  ld aip;
};

inline AiryLd airy_maclaurin(ld x) {
  const ld x3 = x * x * x;
  ld f = 1, g = x, fp = 0, gp = 1;
  ld tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  fp = tfp;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3 * k - 1) * (3 * k));
    tg *= x3 / ((3 * k) * (3 * k + 1));
    tgp *= x3 / ((3 * k - 2) * (3 * k));
    if (k >= 2) {
      tfp *= x3 / ((3 * k - 3) * (3 * k - 1));
      fp += tfp;
    }
    f += tf;
    g += tg;
    gp += tgp;
    const ld mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
    if (mag < 1e-22L * (std::fabs(f) + std::fabs(g) + 1e-300L)) break;
  }
  return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

// Coefficients u_k, v_k of the Airy asymptotic expansions.
inline void airy_asymptotic_coeffs(int kmax, std::vector<ld>& u, std::vector<ld>& v) {
  u.assign(kmax + 1, 1.0L);
  v.assign(kmax + 1, 1.0L);
  for (int k = 1; k <= kmax; ++k) {
    u[k] = u[k - 1] * ld(6 * k - 5) * ld(6 * k - 3) * ld(6 * k - 1) / (ld(2 * k - 1) * 216.0L * k);
    v[k] = -ld(6 * k + 1) / ld(6 * k - 1) * u[k];
  }
}

// Exponentially scaled values e^{zeta} Ai(x), e^{zeta} Ai'(x) for x >= 9.
inline AiryLd airy_asymptotic_pos_scaled(ld x) {
  static const auto coeffs = [] {
    std::vector<ld> u, v;
    airy_asymptotic_coeffs(40, u, v);
    return std::pair{u, v};
  }();
  const auto& [u, v] = coeffs;
  const ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
  ld su = 0, sv = 0, p = 1, last = INFINITY;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const ld tu = u[k] * p, tv = v[k] * p;
    const ld mag = std::fabs(tu) + std::fabs(tv);
    if (mag > last) break;
    su += tu;
    sv += tv;
    last = mag;
    if (mag < 1e-21L) break;
    p *= -1.0L / zeta;
  }
  const ld x14 = std::sqrt(std::sqrt(x));
  const ld c = 0.5L / std::sqrt(kPi);
  return {c / x14 * su, -c * x14 * sv};
}

// Ai(x), Ai'(x) for x <= -9 via the modulus/phase asymptotic forms.
inline AiryLd airy_asymptotic_neg(ld x) {
  static const auto coeffs = [] {
    std::vector<ld> u, v;
    airy_asymptotic_coeffs(40, u, v);
    return std::pair{u, v};
  }();
  const auto& [u, v] = coeffs;
  const ld y = -x;
  const ld zeta = 2.0L / 3.0L * y * std::sqrt(y);
  ld pe = 0, po = 0, qe = 0, qo = 0;
  ld p = 1, last = INFINITY;
  for (std::size_t k = 0; k + 1 < u.size(); k += 2) {
    const ld sign = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    const ld t0 = sign * u[k] * p, t1 = sign * u[k + 1] * p / zeta;
    const ld s0 = sign * v[k] * p, s1 = sign * v[k + 1] * p / zeta;
    const ld mag = std::fabs(t0) + std::fabs(t1) + std::fabs(s0) + std::fabs(s1);
    if (mag > last) break;
    pe += t0;
    po += t1;
    qe += s0;
    qo += s1;
    last = mag;
    if (mag < 1e-21L) break;
    p /= zeta * zeta;
  }
  const ld phase = zeta - kPi / 4;
  const ld cs = std::cos(phase), sn = std::sin(phase);
  const ld y14 = std::sqrt(std::sqrt(y));
  const ld rp = 1.0L / std::sqrt(kPi);
  return {rp / y14 * (cs * pe + sn * po), rp * y14 * (sn * qe - cs * qo)};
}

inline AiryLd airy_taylor(ld x0, AiryLd at, ld h) {
  // y'' = (x0 + h) y  =>  (k+2)(k+1) a_{k+2} = x0 a_k + a_{k-1}
  ld am1 = at.ai, a0 = at.aip;  // a_{k-1}, a_k for k = 1
  ld a2 = x0 * at.ai / 2;
  ld val = at.ai + at.aip * h + a2 * h * h;
  ld der = at.aip + 2 * a2 * h;
  ld prev = a2;  // a_{k+1}
  ld hp = h * h;  // h^{k+1}
  int small = 0;
  for (int k = 1; k < 400; ++k) {
    const ld next = (x0 * a0 + am1) / ld((k + 2) * (k + 1));
    der += ld(k + 2) * next * hp;
    hp *= h;
    const ld term = next * hp;
    val += term;
    am1 = a0;
    a0 = prev;
    prev = next;
    if (std::fabs(term) < 1e-22L * (std::fabs(val) + 1e-300L)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  return {val, der};
}

inline AiryLd airy_ld(ld x) {
  if (x >= -5 && x <= 2) return airy_maclaurin(x);
  if (x >= 9) {
    const ld e = std::exp(-2.0L / 3.0L * x * std::sqrt(x));
    const AiryLd s = airy_asymptotic_pos_scaled(x);
    return {s.ai * e, s.aip * e};
  }
  if (x <= -9) return airy_asymptotic_neg(x);
  if (x > 0) {
    const ld x0 = 9;
    const ld e = std::exp(-2.0L / 3.0L * x0 * std::sqrt(x0));
    const AiryLd s = airy_asymptotic_pos_scaled(x0);
    return airy_taylor(x0, {s.ai * e, s.aip * e}, x - x0);
  }
  const ld x0 = -9;
  return airy_taylor(x0, airy_asymptotic_neg(x0), x - x0);
}

}  // namespace detail

/// Ai(x) and Ai'(x). Absolute accuracy ~1e-15 for |x| <= 10; relative accuracy
/// ~1e-15 elsewhere as long as the value is a normal double (Ai underflows
/// beyond x ~ 104; use airy_scaled there).
inline AiryValue airy(double x) {
  detail::require_finite(x, "airy: non-finite argument");
  const auto r = detail::airy_ld(x);
  return {static_cast<double>(r.ai), static_cast<double>(r.aip)};
}

/// For x > 0 returns e^{2/3 x^{3/2}} (Ai(x), Ai'(x)); for x <= 0 the plain values.
inline AiryValue airy_scaled(double x) {
  detail::require_finite(x, "airy_scaled: non-finite argument");
  using detail::ld;
  const ld xl = x;
  if (x >= 9) {
    const auto s = detail::airy_asymptotic_pos_scaled(xl);
    return {static_cast<double>(s.ai), static_cast<double>(s.aip)};
  }
  const auto r = detail::airy_ld(xl);
  if (x <= 0) return {static_cast<double>(r.ai), static_cast<double>(r.aip)};
  const ld e = std::exp(2.0L / 3.0L * xl * std::sqrt(xl));
  return {static_cast<double>(r.ai * e), static_cast<double>(r.aip * e)};
}

/// Ai(t) from the contour integral along the rays arg(rho) = +-2pi/3:
///   Ai(t) = (1/pi) int_0^R exp(-r^3/3 - r t/2) sin(2pi/3 + sqrt(3)/2 r t) dr.
/// `radius` is the ray truncation R; `nodes` the starting node count of the
/// composite Gauss-Legendre rule, doubled until successive values agree to
/// 1e-12. Independent of airy(); intended as a test oracle.
inline double airy_contour(double t, double radius, int nodes) {
  detail::require_finite(t, "airy_contour: non-finite argument");
  detail::require(radius > 0, "airy_contour: radius must be positive");
  detail::require(nodes > 0, "airy_contour: nodes must be positive");
  const double s3 = std::sqrt(3.0) / 2.0;
  const double phase0 = 2.0 * std::numbers::pi / 3.0;
  auto integrand = [&](double r) {
    return std::exp(-r * r * r / 3.0 - 0.5 * r * t) * std::sin(phase0 + s3 * r * t);
  };
  constexpr int kPanelOrder = 16;
  const auto gl = gauss_legendre(kPanelOrder);
  auto integrate = [&](int panels) {
    const double h = radius / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = p * h;
      for (int i = 0; i < kPanelOrder; ++i) {
        const double r = a + 0.5 * h * (gl.nodes[i] + 1.0);
        sum += 0.5 * h * gl.weights[i] * integrand(r);
      }
    }
    return sum / std::numbers::pi;
  };
  int panels = (nodes + kPanelOrder - 1) / kPanelOrder;
  double prev = integrate(panels);
  for (int it = 0; it < 12; ++it) {
    panels *= 2;
    const double cur = integrate(panels);
    if (std::fabs(cur - prev) <= 1e-12 * (1.0 + std::fabs(cur))) return cur;
    prev = cur;
  }
  throw ConvergenceError("airy_contour: node doubling did not converge");
}

}  // namespace ermt
