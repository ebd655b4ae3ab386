#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "ermt/airy.hpp"
#include "ermt/fredholm.hpp"
#include "ermt/painleve.hpp"
#include "ermt/quadrature.hpp"

using namespace ermt;

namespace {

class PainleveTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { table_ = new PainleveTable(build_painleve_table()); }
  static void TearDownTestSuite() {
    delete table_;
    table_ = nullptr;
  }
  static const PainleveTable& table() { return *table_; }

 private:
  static PainleveTable* table_;
};

PainleveTable* PainleveTest::table_ = nullptr;

// Dormand-Prince 5(4) with step control, integrating q'' = s q + 2 q^3
// from s0 to s1 (either direction).
std::array<double, 2> shoot(double s0, std::array<double, 2> y, double s1, double tol) {
  auto f = [](double s, const std::array<double, 2>& v) {
    return std::array<double, 2>{v[1], s * v[0] + 2.0 * v[0] * v[0] * v[0]};
  };
  static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
  static const double a[7][6] = {{},
                                 {1.0 / 5},
                                 {3.0 / 40, 9.0 / 40},
                                 {44.0 / 45, -56.0 / 15, 32.0 / 9},
                                 {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
                                 {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
                                 {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100,
                               1.0 / 40};
  double s = s0;
  double h = (s1 > s0 ? 1.0 : -1.0) * 1e-3;
  while ((s1 - s) * (s1 > s0 ? 1.0 : -1.0) > 0.0) {
    if ((s + h - s1) * (s1 > s0 ? 1.0 : -1.0) > 0.0) h = s1 - s;
    std::array<std::array<double, 2>, 7> k;
    for (int i = 0; i < 7; ++i) {
      std::array<double, 2> yi = y;
      for (int j = 0; j < i; ++j) {
        yi[0] += h * a[i][j] * k[j][0];
        yi[1] += h * a[i][j] * k[j][1];
      }
      k[i] = f(s + c[i] * h, yi);
    }
    std::array<double, 2> y5 = y, y4 = y;
    for (int i = 0; i < 7; ++i) {
      y5[0] += h * b5[i] * k[i][0];
      y5[1] += h * b5[i] * k[i][1];
      y4[0] += h * b4[i] * k[i][0];
      y4[1] += h * b4[i] * k[i][1];
    }
    const double err = std::max(std::fabs(y5[0] - y4[0]) / (tol * (1 + std::fabs(y5[0]))),
                                std::fabs(y5[1] - y4[1]) / (tol * (1 + std::fabs(y5[1]))));
    if (err <= 1.0) {
      s += h;
      y = y5;
    }
    h *= std::clamp(0.9 * std::pow(err + 1e-300, -0.2), 0.2, 5.0);
  }
  return y;
}

// Resolvent inner products on L^2(s, T) by Nystrom: Q = (I - K_Ai)^{-1} Ai,
// P = (I - K_Ai)^{-1} Ai', returned as {u0,u1,u2,v0,v1,w0,w1,q(s),p(s)}.
std::array<double, 9> resolvent_products(double s) {
  const int m = 200;
  const auto rule = gauss_legendre(m, s, s + 16.0);
  Eigen::MatrixXd A(m, m);
  Eigen::VectorXd ai(m), aip(m), sw(m);
  for (int i = 0; i < m; ++i) {
    const auto v = airy(rule.nodes[i]);
    ai[i] = v.ai;
    aip[i] = v.aip;
    sw[i] = std::sqrt(rule.weights[i]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      A(i, j) = (i == j ? 1.0 : 0.0) - sw[i] * airy_kernel(rule.nodes[i], rule.nodes[j]) * sw[j];
    }
  }
  const auto lu = A.partialPivLu();
  const Eigen::VectorXd Q = lu.solve(sw.cwiseProduct(ai)).cwiseQuotient(sw);
  const Eigen::VectorXd P = lu.solve(sw.cwiseProduct(aip)).cwiseQuotient(sw);
  auto ip = [&](const Eigen::VectorXd& f, const Eigen::VectorXd& g, int power) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += rule.weights[i] * f[i] * g[i] * std::pow(rule.nodes[i], power);
    return acc;
  };
  // Nystrom interpolation of Q, P at the endpoint x = s
  const auto as = airy(s);
  double qs = as.ai, ps = as.aip;
  for (int j = 0; j < m; ++j) {
    const double k = airy_kernel(s, rule.nodes[j]) * rule.weights[j];
    qs += k * Q[j];
    ps += k * P[j];
  }
  return {ip(Q, ai, 0), ip(Q, ai, 1), ip(Q, ai, 2), ip(Q, aip, 0), ip(Q, aip, 1), ip(P, aip, 0), ip(P, aip, 1), qs, ps};
}

}  // namespace

TEST_F(PainleveTest, RightBoundaryMatchesAiry) {
  EXPECT_LT(std::fabs(table_value(table(), Column::Q, 6.0) / airy(6.0).ai - 1.0), 1e-8);
  const double r = table().q.back() / airy(table().s_max()).ai;
  EXPECT_GE(r, 1.0 - 1e-6);
  EXPECT_LE(r, 1.0 + 1e-6);
}

TEST_F(PainleveTest, MatchesBackwardShooting) {
  const auto a8 = airy(8.0);
  const auto y0 = shoot(8.0, {a8.ai, a8.aip}, 0.0, 1e-13);
  EXPECT_NEAR(table_value(table(), Column::Q, 0.0), y0[0], 1e-7);
  EXPECT_NEAR(table_value(table(), Column::QP, 0.0), y0[1], 1e-7);
  EXPECT_NEAR(table_value(table(), Column::Q, 0.0), 0.36706155154807, 1e-10);
}

TEST_F(PainleveTest, LeftAsymptote) {
  EXPECT_NEAR(table_value(table(), Column::Q, -6.0), std::sqrt(3.0), 0.05 * std::sqrt(3.0));
  const double s = -9.5;
  const double r = std::sqrt(-s / 2);
  EXPECT_NEAR(table_value(table(), Column::Q, s), r * (1.0 + 1.0 / (8.0 * s * s * s)), 1e-5);
}

TEST_F(PainleveTest, PositiveWithSmallOdeResidual) {
  for (double q : table().q) EXPECT_GT(q, 0.0);
  EXPECT_LE(ode_residual(table(), -8.0, 6.0), 1e-8);
}

TEST_F(PainleveTest, F2IsADistributionFunction) {
  const auto& f2 = table().f2;
  for (std::size_t k = 1; k < f2.size(); ++k) {
    EXPECT_GE(f2[k], f2[k - 1]) << table().s[k];
    if (f2[k] < 1.0 - 1e-12) {
      EXPECT_GT(f2[k], f2[k - 1]) << table().s[k];
    }
    EXPECT_GT(f2[k], 0.0);
    EXPECT_LE(f2[k], 1.0);
  }
  EXPECT_GE(f2.back(), 1.0 - 1e-10);
  EXPECT_GE(tw2_cdf(table(), table().s_max()), 1.0 - 1e-10);
  EXPECT_LE(tw2_cdf(table(), -8.0), 1e-4);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> us(-9.9, 7.9);
  for (int i = 0; i < 500; ++i) {
    const double a = us(rng), b = a + 1e-4;
    EXPECT_LE(tw2_cdf(table(), a), tw2_cdf(table(), b) + 4e-16);
  }
}

TEST_F(PainleveTest, AuxiliaryColumnsVanishAtRightEnd) {
  for (auto c : {Column::U0, Column::U1, Column::U2, Column::V0, Column::V1, Column::W0, Column::W1, Column::I_INT,
                 Column::J_INT}) {
    EXPECT_LE(std::fabs(table().column(c).back()), 1e-10);
  }
}

TEST_F(PainleveTest, U0MatchesAiryIntegralInRightTail) {
  const auto a = airy(5.0);
  EXPECT_NEAR(table_value(table(), Column::U0, 5.0), a.aip * a.aip - 5.0 * a.ai * a.ai, 1e-6);
}

TEST_F(PainleveTest, F2MatchesAiryDeterminant) {
  EXPECT_NEAR(tw2_cdf(table(), -2.0), airy_det(-2.0), 1e-6);
  EXPECT_NEAR(tw2_cdf(table(), 0.0), airy_det(0.0), 1e-6);
  for (int s = -5; s <= 3; ++s) EXPECT_NEAR(tw2_cdf(table(), s), airy_det(s), 1e-6) << s;
}

TEST_F(PainleveTest, LogDerivativeOfF2IsIInt) {
  const double h = 1e-4;
  for (double s : {-6.0, -3.3, -1.0, 0.2, 2.5}) {
    const double d = (std::log(tw2_cdf(table(), s + h)) - std::log(tw2_cdf(table(), s - h))) / (2 * h);
    EXPECT_NEAR(d, table_value(table(), Column::I_INT, s), 1e-7) << s;
  }
}

TEST_F(PainleveTest, AuxiliaryColumnsMatchNystromResolvent) {
  for (double s : {-3.0, -1.0, 0.0, 2.0}) {
    const auto r = resolvent_products(s);
    EXPECT_NEAR(table_value(table(), Column::U0, s), r[0], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::U1, s), r[1], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::U2, s), r[2], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::V0, s), r[3], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::V1, s), r[4], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::W0, s), r[5], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::W1, s), r[6], 1e-8) << s;
    EXPECT_NEAR(table_value(table(), Column::Q, s), r[7], 1e-8) << s;
    const double p = table_value(table(), Column::QP, s) + table_value(table(), Column::Q, s) * r[0];
    EXPECT_NEAR(p, r[8], 1e-8) << s;
  }
}

TEST_F(PainleveTest, GridRefinementIsStable) {
  PainleveOptions fine;
  fine.step = 0.0025;
  const auto t2 = build_painleve_table(fine);
  double worst = 0.0;
  for (auto c : {Column::Q, Column::U0, Column::U1, Column::U2, Column::V0, Column::V1, Column::W0, Column::W1,
                 Column::F2}) {
    for (std::size_t k = 0; k < table().size(); ++k) {
      worst = std::max(worst, std::fabs(table().column(c)[k] - t2.column(c)[2 * k]));
    }
  }
  EXPECT_LE(worst, 1e-8);
}

TEST_F(PainleveTest, InterpolationReproducesNodes) {
  for (std::size_t k = 0; k < table().size(); k += 97) {
    EXPECT_NEAR(table_value(table(), Column::W1, table().s[k]), table().w1[k], 1e-13);
  }
  EXPECT_THROW(table_value(table(), Column::Q, 8.5), std::out_of_range);
  EXPECT_THROW(tw2_cdf(table(), -10.5), std::out_of_range);
}

TEST_F(PainleveTest, EFunctionsVanishAtRightEnd) {
  for (auto kind : {EKind::G, EKind::L, EKind::Universal}) {
    EXPECT_NEAR(e_function(table(), table().s_max(), kind, 0.3), 0.0, 1e-10);
  }
}

TEST_F(PainleveTest, EFunctionsAgreeOnTheCircle) {
  const double pairs[3][2] = {{0.0, 0.5}, {0.5, 0.0}, {0.3, 0.4}};
  for (const auto& p : pairs) {
    for (double s : {-3.0, -1.0, 0.0, 2.0}) {
      EXPECT_NEAR(e_function(table(), s, EKind::G, p[0]), e_function(table(), s, EKind::L, p[1]), 1e-12);
      EXPECT_NEAR(e_function(table(), s, EKind::Universal, p[0]), e_function(table(), s, EKind::G, p[0]), 1e-12);
    }
  }
}

TEST_F(PainleveTest, EFunctionLinearInKappa) {
  for (double s : {-2.5, 0.7}) {
    const double c = 0.37;
    EXPECT_NEAR(e_function(table(), s, EKind::G, c) - e_function(table(), s, EKind::G, 0.0),
                -20.0 * c * c * table_value(table(), Column::V0, s), 1e-12);
  }
  EXPECT_THROW(e_function(table(), 0.0, EKind::Universal, 0.6), std::domain_error);
}

TEST_F(PainleveTest, CsvRoundTrip) {
  std::stringstream ss;
  write_table_csv(table(), ss);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("# edgeworth-rmt v1\ns,q,qp,u0,u1,u2,v0,v1,w0,w1,i_int,j_int,f2\n", 0), 0u);
  const auto back = read_table_csv(ss);
  ASSERT_EQ(back.size(), table().size());
  for (int c = 0; c < 13; ++c) {
    EXPECT_EQ(back.column(static_cast<Column>(c)), table().column(static_cast<Column>(c))) << c;
  }
}

TEST(PainleveCsv, RejectsMissingHeader) {
  std::stringstream ss("s,q\n1,2\n");
  EXPECT_THROW(read_table_csv(ss), std::runtime_error);
}

TEST(PainleveSolve, RejectsBadRanges) {
  EXPECT_THROW(solve_hastings_mcleod(-1.0, 8.0, 1e-8), std::domain_error);
  EXPECT_THROW(solve_hastings_mcleod(-10.0, 4.0, 1e-8), std::domain_error);
}

TEST(PainleveSolve, ReportsNonConvergence) {
  PainleveOptions o;
  o.max_newton = 1;
  try {
    solve_hastings_mcleod(o.s_min, o.s_max, o.tol, o);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("iterations"), std::string::npos);
  }
}

TEST(PainleveSolve, CoarseGridIsDetected) {
  const auto fine = solve_hastings_mcleod(-10.0, 8.0, 1e-8);
  PainleveTable coarse;
  for (std::size_t k = 0; k < fine.size(); k += 80) {
    coarse.s.push_back(fine.s[k]);
    coarse.q.push_back(fine.q[k]);
    coarse.qp.push_back(fine.qp[k]);
  }
  EXPECT_THROW(auxiliary_integrals(coarse), GridTooCoarseError);
}
