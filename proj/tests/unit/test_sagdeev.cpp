#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sheath/sagdeev.hpp"
#include "support.hpp"

namespace sheath {
namespace {

using testing::code_of;

TEST(F, VanishesAtFarField) {
  EXPECT_EQ(f(1.0, testing::degenerate()), 0.0);
  EXPECT_EQ(f(1.0, testing::nondegenerate()), 0.0);
}

TEST(F, DirectSubstitution) {
  // (n - 1) + (1/n^2 - 1) at n = 2
  EXPECT_NEAR(f(2.0, testing::degenerate()), 0.25, 1e-15);
}

TEST(F, RejectsNonPositiveDensity) {
  EXPECT_EQ(code_of([] { f(0.0, testing::degenerate()); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { f_prime(-1.0, testing::degenerate()); }), ErrorCode::DomainError);
}

TEST(F, MinimumAtCriticalDensity) {
  const auto p = testing::degenerate();
  const double c = critical_density(p);
  EXPECT_NEAR(f_prime(c, p), 0.0, 1e-15);
  EXPECT_LT(f_prime(c * (1 - 1e-4), p), 0.0);
  EXPECT_GT(f_prime(c * (1 + 1e-4), p), 0.0);
  for (double n : {0.3, 0.8, 1.0, 1.1, 1.5, 2.0}) {
    EXPECT_GE(f(n, p), f(c, p));
  }
}

TEST(FPrime, DirectSubstitution) {
  EXPECT_NEAR(f_prime(1.0, testing::degenerate()), -1.0, 1e-15);
}

TEST(FPrime, MatchesCentredDifference) {
  const auto p = testing::degenerate();
  const double h = 1e-5;
  const double fd = (f(1.0 + h, p) - f(1.0 - h, p)) / (2 * h);
  EXPECT_NEAR(fd, f_prime(1.0, p), 1e-8);
}

TEST(FOffset, AgreesWithDirectFormAwayFromZero) {
  const auto p = testing::nondegenerate();
  for (double d : {-0.4, -0.1, 0.05, 0.3}) {
    EXPECT_NEAR(f_offset(d, p), f(1.0 + d, p), 1e-14);
  }
  EXPECT_NEAR(f_offset(1e-9, p), f_prime(1.0, p) * 1e-9, 1e-17);
}

TEST(FInverse, BranchAnchors) {
  const auto p = testing::degenerate();
  EXPECT_EQ(f_inverse(0.0, p), 1.0);
  const BranchedInverse inv(p);
  EXPECT_NEAR(inv(inv.domain_lo()), inv.c_crit(), 1e-15);
}

TEST(FInverse, IndependentOracleValues) {
  // 40-digit reference roots of f(n) = phi on (0, c_crit].
  EXPECT_NEAR(f_inverse(0.25, testing::degenerate()), 0.84307033081725358, 1e-13);
  EXPECT_NEAR(f_inverse(-0.05, testing::nondegenerate()), 1.0172482781279668, 1e-13);
  EXPECT_NEAR(f(f_inverse(0.25, testing::degenerate()), testing::degenerate()), 0.25, 1e-10);
}

TEST(FInverse, BelowBranchRaises) {
  const auto p = testing::degenerate();
  const BranchedInverse inv(p);
  EXPECT_EQ(code_of([&] { inv(inv.domain_lo() - 1e-3); }), ErrorCode::BranchExceeded);
}

TEST(FInverse, RequiresSupersonicFlow) {
  EXPECT_EQ(code_of([] { BranchedInverse(testing::base_params(-0.5, 0)); }),
            ErrorCode::InvalidParams);
}

TEST(FInverse, RoundTripOnUniformSample) {
  for (const auto& p : {testing::degenerate(), testing::nondegenerate()}) {
    const BranchedInverse inv(p);
    const double hi = std::max(p.phi_b, 1.0);
    for (int k = 0; k < 100; ++k) {
      const double phi = inv.domain_lo() + (hi - inv.domain_lo()) * k / 99.0;
      EXPECT_NEAR(f(inv(phi), p), phi, 1e-10) << "phi = " << phi;
    }
  }
}

TEST(FInverse, StrictlyDecreasing) {
  auto g = testing::rng(20);
  const auto p = testing::degenerate();
  const BranchedInverse inv(p);
  std::vector<double> phis;
  for (int k = 0; k < 200; ++k) {
    phis.push_back(testing::uniform(g, inv.domain_lo() + 1e-9, 1.0));
  }
  std::sort(phis.begin(), phis.end());
  for (std::size_t k = 1; k < phis.size(); ++k) {
    if (phis[k] > phis[k - 1]) {
      EXPECT_LT(inv(phis[k]), inv(phis[k - 1]));
    }
  }
}

TEST(FInverse, OffsetAccurateNearZero) {
  const auto p = testing::nondegenerate();
  const BranchedInverse inv(p);
  // n - 1 ~ phi / f'(1) = -phi / 3
  EXPECT_NEAR(inv.offset(3e-12), -1e-12, 1e-22);
}

TEST(SagdeevV, VanishesAtZeroWithFlatSlope) {
  for (const auto& p : {testing::degenerate(), testing::nondegenerate()}) {
    EXPECT_EQ(sagdeev_V(0.0, p), 0.0);
    const double h = 1e-4;
    const double slope = (sagdeev_V(h, p, 1e-18) - sagdeev_V(-h, p, 1e-18)) / (2 * h);
    EXPECT_NEAR(slope, 0.0, 1e-8);
  }
}

TEST(SagdeevV, IndependentOracleValues) {
  EXPECT_NEAR(sagdeev_V(0.01, testing::degenerate()), 8.0026884654046333e-07, 1e-15);
  EXPECT_NEAR(sagdeev_V(-0.05, testing::nondegenerate()), 8.4484829955826180e-04, 1e-13);
}

TEST(SagdeevV, CurvatureAtZero) {
  // The degenerate well is cubic, so the truncation term 4 Gamma^2 k h^2 needs h <= 1e-4.
  const double h = 1e-4;
  for (const auto& p : {testing::degenerate(), testing::nondegenerate()}) {
    const double fd = (sagdeev_V(h, p, 1e-18) + sagdeev_V(-h, p, 1e-18)) / (h * h);
    EXPECT_NEAR(fd, sagdeev_curvature(p), 1e-6);
  }
  EXPECT_NEAR(sagdeev_curvature(testing::nondegenerate()), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(sagdeev_curvature(testing::degenerate()), 0.0, 1e-15);
}

TEST(SagdeevV, DerivativeMatchesIntegrand) {
  auto g = testing::rng(21);
  const double quad_tol = 1e-14;
  for (const auto& p : {testing::degenerate(), testing::nondegenerate()}) {
    const BranchedInverse inv(p);
    for (int k = 0; k < 20; ++k) {
      const double phi = testing::uniform(g, inv.domain_lo() * 0.9, 0.5);
      const double h = 1e-5;
      const double fd = (sagdeev_V(phi + h, p, quad_tol) - sagdeev_V(phi - h, p, quad_tol)) / (2 * h);
      EXPECT_NEAR(fd, inv(phi) - std::exp(-phi), std::max(1e-8, 10 * quad_tol)) << phi;
    }
  }
}

TEST(SagdeevV, DegenerateWellIsQuartic) {
  const auto p = testing::degenerate();
  for (double phi : {1e-3, 3e-3, 1e-2, 3e-2}) {
    EXPECT_GT(sagdeev_V(phi, p), 0.0);
  }
  // V ~ 2 Gamma^2 phi^3 on the degenerate line: ratio of V at phi and 2 phi tends to 8.
  const double r = sagdeev_V(2e-3, p, 1e-20) / sagdeev_V(1e-3, p, 1e-20);
  EXPECT_NEAR(r, 8.0, 0.05);
}

TEST(SagdeevSeries, MatchesQuadratureAcrossTheBranch) {
  for (const auto& p : {testing::degenerate(), testing::nondegenerate()}) {
    const BranchedInverse inv(p);
    const SagdeevSeries series(p);
    for (double phi : {-0.08, -0.01, -1e-4, 1e-4, 5e-3, 0.05, 0.3}) {
      if (phi < inv.domain_lo()) {
        continue;
      }
      const double v = sagdeev_V(phi, p, 1e-16);
      EXPECT_NEAR(series.potential(inv.offset(phi)), v, 1e-13 + 1e-10 * std::abs(v)) << phi;
    }
  }
}

TEST(Existence, TrivialBoundaryValue) {
  const auto r = existence_check(testing::degenerate(0.0));
  EXPECT_TRUE(r.exists);
  EXPECT_EQ(r.V_at_phib, 0.0);
}

TEST(Existence, DegenerateReference) {
  const auto r = existence_check(testing::degenerate(0.01));
  EXPECT_TRUE(r.exists);
  EXPECT_GT(r.V_at_phib, 0.0);
  EXPECT_NEAR(r.f_at_c, -0.11011842515769025, 1e-14);
}

TEST(Existence, BelowBranchReportsWitnesses) {
  const auto r = existence_check(testing::degenerate(-0.2));
  EXPECT_FALSE(r.exists);
  EXPECT_TRUE(std::isnan(r.V_at_phib));
  EXPECT_LT(-0.2, r.f_at_c);
}

TEST(Existence, NegativePotentialWellInDegenerateCase) {
  // V ~ 2 Gamma^2 phi^3 < 0 for small negative phi.
  const auto r = existence_check(testing::degenerate(-0.01));
  EXPECT_FALSE(r.exists);
  EXPECT_LT(r.V_at_phib, 0.0);
}

TEST(Existence, ForbiddenBandRaises) {
  EXPECT_EQ(code_of([] { existence_check(testing::base_params(-1.2, 0.01)); }),
            ErrorCode::InvalidParams);
}

TEST(SagdeevTable, RowsAreConsistent) {
  const auto p = testing::degenerate();
  const auto rows = sagdeev_table(p, 0.0, 0.02, 5);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows.front().phi, 0.0);
  EXPECT_EQ(rows.front().n, 1.0);
  EXPECT_EQ(rows.front().V, 0.0);
  EXPECT_DOUBLE_EQ(rows.back().phi, 0.02);
  for (const auto& r : rows) {
    EXPECT_NEAR(f(r.n, p), r.phi, 1e-12);
  }
  EXPECT_EQ(code_of([&] { sagdeev_table(p, 0.0, 0.02, 1); }), ErrorCode::DomainError);
}

}  // namespace
}  // namespace sheath
