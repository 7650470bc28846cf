#include <cmath>

#include <gtest/gtest.h>

#include "sheath/asymptotics.hpp"
#include "sheath/stationary.hpp"
#include "support.hpp"

namespace sheath {
namespace {

using testing::code_of;

TEST(ExpansionConstants, ClosedForms) {
  const auto p = testing::degenerate();
  const auto c = expansion_constants(p);
  const double G = std::sqrt(5.0 / 12.0);
  EXPECT_EQ(c.c0, 1.0);
  EXPECT_NEAR(c.Gamma, G, 1e-15);
  EXPECT_NEAR(c.c1, -2 * G, 1e-15);
  EXPECT_NEAR(c.c2, 2.5, 1e-14);  // ((gamma^2 + gamma) R T + 2) / 2
  EXPECT_NEAR(c.c3, -4 * G * c.c2, 1e-14);
  EXPECT_NEAR(c.c1, -2 * c.Gamma * c.c0, 0.0);
  EXPECT_EQ(c[0], c.c0);
  EXPECT_EQ(c[3], c.c3);
}

TEST(Gauge, Values) {
  const auto p = testing::degenerate(0.01);
  const double G = std::sqrt(5.0 / 12.0);
  EXPECT_NEAR(gauge(0.0, p), 10.0, 1e-15);
  EXPECT_NEAR(gauge(10.0 / G, p), 20.0, 1e-13);
  EXPECT_NEAR(gauge(10.0, p), 16.454972243679028, 1e-13);
}

TEST(Gauge, OnlyOnDegenerateLine) {
  EXPECT_EQ(code_of([] { gauge(1.0, testing::nondegenerate()); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { gauge(1.0, testing::degenerate(0.0)); }), ErrorCode::InvalidParams);
}

TEST(Lambda0, OracleRoots) {
  EXPECT_NEAR(lambda0(2.0), 5.0994930446291139, 1e-13);
  EXPECT_NEAR(lambda0(3.0), 4.8468843106261814, 1e-13);
  EXPECT_NEAR(lambda0(10.0), 4.3250470397404958, 1e-13);
  EXPECT_NEAR(lambda0(1e6), 4.0000036923026891, 1e-12);
  for (double g : {1.1, 2.0, 3.0, 1e6}) {
    EXPECT_LE(std::abs(lambda0_cubic(lambda0(g), g)), 1e-12);
  }
}

TEST(Lambda0, LargeGammaLimitIsFour) {
  EXPECT_EQ(4.0 * 3.0 * 2.0, 24.0);
  EXPECT_GE(lambda0(1e6), 4.0);
  EXPECT_LE(lambda0(1e6), 4.0 + 1e-3);
}

TEST(Lambda0, StrictlyDecreasingInGamma) {
  const double gammas[] = {1.1, 1.4, 5.0 / 3.0, 2.0, 3.0, 10.0};
  for (std::size_t k = 1; k < std::size(gammas); ++k) {
    EXPECT_LT(lambda0(gammas[k]), lambda0(gammas[k - 1]));
  }
}

TEST(Lambda0, RejectsGammaAtMostOne) {
  EXPECT_EQ(code_of([] { lambda0(1.0); }), ErrorCode::InvalidParams);
}

TEST(Root55693, BracketResidualAndContinuity) {
  const double r = root_5_5693();
  EXPECT_GE(r, 5.5692);
  EXPECT_LE(r, 5.5694);
  EXPECT_NEAR(r, 5.5693152827941124, 1e-13);
  EXPECT_LE(std::abs(r * (r - 1) * (r - 2) - 12 * (r + 2)), 1e-12);
  EXPECT_NEAR(lambda0(1.0 + 1e-12), r, 1e-10);
}

TEST(ProfileDerivative, ExactOnLowDegreePolynomials) {
  std::vector<double> x, y;
  for (int i = 0; i <= 60; ++i) {
    x.push_back(0.1 * i);
    y.push_back(std::pow(x.back(), 3) - 2 * x.back());
  }
  const auto d1 = profile_derivative(x, y, 1);
  const auto d2 = profile_derivative(x, y, 2);
  const auto d3 = profile_derivative(x, y, 3);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(d1[i], 3 * x[i] * x[i] - 2, 1e-9);
    EXPECT_NEAR(d2[i], 6 * x[i], 1e-8);
    EXPECT_NEAR(d3[i], 6.0, 1e-7);
  }
}

class Expansion : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    profile_ = new SheathProfile(solve_stationary(testing::degenerate(0.01), {}));
    report_ = new ExpansionReport(verify_expansion(*profile_));
  }
  static void TearDownTestSuite() {
    delete profile_;
    delete report_;
  }
  static const ExpansionRow& row(Observable u, int i) {
    for (const auto& r : report_->rows) {
      if (r.U == u && r.order == i) {
        return r;
      }
    }
    throw std::logic_error("row missing");
  }
  static inline SheathProfile* profile_ = nullptr;
  static inline ExpansionReport* report_ = nullptr;
};

TEST_F(Expansion, ReportShape) {
  EXPECT_EQ(report_->phi_b, 0.01);
  EXPECT_EQ(report_->rows.size(), 5u * 4u);
  for (const auto& r : report_->rows) {
    EXPECT_NEAR(r.sup_over_phib, r.sup / 0.01, 1e-12);
    EXPECT_LT(r.error_floor, r.sup);
  }
}

TEST_F(Expansion, LeadingOrderAgainstOracle) {
  // sup |1 - phi G^2| / phi_b from a 40-digit quadrature of x(phi).
  EXPECT_NEAR(row(Observable::NegPotential, 0).sup_over_phib, 1.0312507, 5e-5);
}

TEST_F(Expansion, FirstDerivativeRecoversTwoGamma) {
  const double two_gamma = 2 * std::sqrt(5.0 / 12.0);
  EXPECT_LE(row(Observable::NegPotential, 1).sup / two_gamma, 0.1);
}

TEST_F(Expansion, ObservablesShareLeadingBehaviour) {
  const auto neg_phi = observable(*profile_, Observable::NegPotential);
  const auto p = profile_->params;
  for (auto u : kObservables) {
    const auto other = observable(*profile_, u);
    double sup = 0.0;
    for (std::size_t i = 0; i + 5 < profile_->size(); ++i) {
      const double G = gauge(profile_->x[i], p);
      sup = std::max(sup, std::abs((other[i] - neg_phi[i]) * G * G));
    }
    EXPECT_LE(sup, 5 * p.phi_b) << to_string(u);
  }
}

TEST_F(Expansion, ObservableSignsAndNames) {
  EXPECT_EQ(to_string(Observable::VelocityRatio), "1-u/u_inf");
  const auto v = observable(*profile_, Observable::VelocityRatio);
  const auto t = observable(*profile_, Observable::TemperatureRatio);
  EXPECT_LT(v.front(), 0.0);  // n < 1 at a positive wall potential, so |u| > |u_inf|
  EXPECT_LT(t.front(), 0.0);
}

TEST(ExpansionTrivial, ZeroWallPotentialIsEmpty) {
  const auto prof = solve_stationary(testing::degenerate(0.0), {10.0, 1e4, 64});
  EXPECT_TRUE(verify_expansion(prof).rows.empty());
}

TEST(ExpansionTrivial, NondegenerateRejected) {
  const auto prof = solve_stationary(testing::nondegenerate(), {20.0, 1e4, 200});
  EXPECT_EQ(code_of([&] { verify_expansion(prof); }), ErrorCode::InvalidParams);
}

}  // namespace
}  // namespace sheath
