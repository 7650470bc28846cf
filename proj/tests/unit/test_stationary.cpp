#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sheath/sagdeev.hpp"
#include "sheath/stationary.hpp"
#include "support.hpp"

namespace sheath {
namespace {

using testing::code_of;

SheathProfile nondegenerate_profile(std::size_t cells = 800, double length = 20.0) {
  return solve_stationary(testing::nondegenerate(), {length, 1e4, cells});
}

TEST(Stationary, ZeroWallPotentialGivesConstantState) {
  const auto p = testing::degenerate(0.0);
  const auto prof = solve_stationary(p, {10.0, 1e4, 32});
  ASSERT_EQ(prof.size(), 33u);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    EXPECT_EQ(prof.phi[i], 0.0);
    EXPECT_EQ(prof.n[i], 1.0);
    EXPECT_EQ(prof.u[i], p.u_inf);
    EXPECT_EQ(prof.T[i], p.T_inf);
  }
  const auto r = residual_check(prof);
  EXPECT_EQ(r.mass_flux, 0.0);
  EXPECT_EQ(r.momentum, 0.0);
  EXPECT_EQ(r.entropy, 0.0);
  EXPECT_EQ(r.poisson, 0.0);
  EXPECT_EQ(code_of([&] { tail_decay_fit(prof, prof.regime); }), ErrorCode::InsufficientTail);
}

TEST(Stationary, NondegenerateWallDensity) {
  const auto prof = nondegenerate_profile();
  EXPECT_EQ(prof.phi.front(), -0.05);
  EXPECT_NEAR(prof.n.front(), 1.0172482781279668, 1e-12);
  EXPECT_GT(prof.n.front(), 1.0);
}

TEST(Stationary, MonotoneWithWallSign) {
  for (const auto& prof : {nondegenerate_profile(),
                           solve_stationary(testing::degenerate(), {200.0, 1e4, 1000})}) {
    const double sign = prof.params.phi_b > 0 ? 1.0 : -1.0;
    for (std::size_t i = 1; i < prof.size(); ++i) {
      EXPECT_LT(sign * (prof.phi[i] - prof.phi[i - 1]), 0.0) << i;
      EXPECT_GT(sign * prof.phi[i], 0.0);
      EXPECT_GT(prof.n[i], 0.0);
      EXPECT_GT(prof.T[i], 0.0);
    }
  }
}

TEST(Stationary, PointwiseIdentitiesHold) {
  for (std::size_t cells : {100u, 400u}) {
    const auto r = residual_check(nondegenerate_profile(cells));
    EXPECT_LE(r.mass_flux, 1e-10);
    EXPECT_LE(r.momentum, 1e-10);
    EXPECT_LE(r.entropy, 1e-10);
  }
}

TEST(Stationary, PoissonResidualIsSecondOrder) {
  const double coarse = residual_check(nondegenerate_profile(200)).poisson;
  const double fine = residual_check(nondegenerate_profile(400)).poisson;
  EXPECT_GT(coarse / fine, 3.5);
  EXPECT_LT(coarse / fine, 4.5);
}

TEST(Stationary, FirstIntegralAlongProfile) {
  // phi_x from a fourth-order centred difference against sqrt(2 V(phi)).
  const auto prof = nondegenerate_profile(1600);
  const double h = prof.x[1] - prof.x[0];
  const auto& p = prof.params;
  for (std::size_t i = 2; i + 2 < prof.size(); i += 37) {
    const double dphi = (prof.phi[i - 2] - 8 * prof.phi[i - 1] + 8 * prof.phi[i + 1] -
                         prof.phi[i + 2]) / (12 * h);
    const double V = sagdeev_V(prof.phi[i], p, 1e-16);
    EXPECT_NEAR(0.5 * dphi * dphi, V, 1e-9 * std::max(1e-3, V / 1e-3)) << prof.x[i];
  }
}

TEST(Stationary, NondegenerateTailRate) {
  const auto prof = solve_stationary(testing::nondegenerate(), {});
  const auto t = tail_decay_fit(prof, prof.regime);
  EXPECT_EQ(t.model, TailModel::Exponential);
  EXPECT_NEAR(t.predicted, std::sqrt(2.0 / 3.0), 1e-14);
  EXPECT_NEAR(t.fitted / t.predicted, 1.0, 0.02);
}

TEST(Stationary, DegenerateTailSlope) {
  const auto prof = solve_stationary(testing::degenerate(), {});
  const auto t = tail_decay_fit(prof, prof.regime);
  EXPECT_EQ(t.model, TailModel::Algebraic);
  EXPECT_EQ(t.predicted, -2.0);
  EXPECT_GE(t.fitted, -2.2);
  EXPECT_LE(t.fitted, -1.8);
}

TEST(Stationary, DegenerateApproachesGaugeSquared) {
  const auto p = testing::degenerate();
  const auto prof = solve_stationary(p, {});
  const double gamma_c = degenerate_decay_constant(p);
  const double G_end = gamma_c * prof.x.back() + 1.0 / std::sqrt(p.phi_b);
  EXPECT_NEAR(prof.phi.back() * G_end * G_end, 1.0, 0.01);
}

TEST(Stationary, ShortDomainHasInsufficientTail) {
  const auto prof = solve_stationary(testing::nondegenerate(), {2.0, 1e4, 100});
  EXPECT_EQ(code_of([&] { tail_decay_fit(prof, prof.regime); }), ErrorCode::InsufficientTail);
}

TEST(Stationary, DefaultLengthPerRegime) {
  const auto nd = testing::nondegenerate();
  EXPECT_NEAR(default_domain_length(nd, classify_regime(nd)), 20.0 / std::sqrt(2.0 / 3.0), 1e-12);
  const auto dg = testing::degenerate();
  EXPECT_NEAR(default_domain_length(dg, classify_regime(dg)),
              40.0 / (std::sqrt(5.0 / 12.0) * 0.1), 1e-9);
}

TEST(Stationary, ExistenceViolation) {
  EXPECT_EQ(code_of([] { solve_stationary(testing::degenerate(-0.01), {10.0, 1e4, 100}); }),
            ErrorCode::ExistenceViolation);
  EXPECT_EQ(code_of([] { solve_stationary(testing::degenerate(-0.5), {10.0, 1e4, 100}); }),
            ErrorCode::ExistenceViolation);
}

TEST(Stationary, RejectsMalformedGrids) {
  const auto p = testing::nondegenerate();
  const std::vector<double> not_at_zero{0.1, 0.2, 0.3};
  const std::vector<double> not_increasing{0.0, 0.2, 0.2};
  const std::vector<double> single{0.0};
  EXPECT_EQ(code_of([&] { solve_stationary_on(p, not_at_zero); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { solve_stationary_on(p, not_increasing); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { solve_stationary_on(p, single); }), ErrorCode::DomainError);
}

TEST(Stationary, NonuniformGridAgreesWithUniform) {
  const auto p = testing::nondegenerate();
  std::vector<double> x;
  for (int i = 0; i <= 400; ++i) {
    const double s = i / 400.0;
    x.push_back(20.0 * s * s);
  }
  const auto a = solve_stationary_on(p, x);
  const auto b = nondegenerate_profile(400);
  const auto c = resample(b, x);
  for (std::size_t i = 0; i < x.size(); i += 20) {
    EXPECT_NEAR(a.phi[i], c.phi[i], 1e-7);
  }
  EXPECT_LE(residual_check(c).momentum, 1e-10);
}

TEST(Stationary, AmplitudeShrinksWithWallPotential) {
  double prev = 0.0;
  for (double phi_b : {-0.08, -0.04, -0.02, -0.01}) {
    const auto p = testing::nondegenerate(phi_b);
    const auto prof = solve_stationary(p, {20.0, 1e4, 200});
    double sup = 0.0;
    for (std::size_t i = 0; i < prof.size(); ++i) {
      sup = std::max(sup, std::abs(prof.n[i] - 1) + std::abs(prof.u[i] - p.u_inf) +
                              std::abs(prof.T[i] - p.T_inf) + std::abs(prof.phi[i]));
    }
    if (prev > 0.0) {
      EXPECT_LE(sup, 0.5 * prev * (1 + 1e-12));
    }
    prev = sup;
  }
}

TEST(Stationary, MetaRecordsConstruction) {
  const auto prof = solve_stationary(testing::nondegenerate(), {});
  EXPECT_EQ(prof.meta.tail_eps, 1e-6);
  EXPECT_NEAR(prof.meta.tail_rate, std::sqrt(2.0 / 3.0), 1e-14);
  ASSERT_TRUE(prof.meta.x_cut.has_value());
  EXPECT_LT(*prof.meta.x_cut, prof.length());
}

}  // namespace
}  // namespace sheath
