#include <cmath>

#include <gtest/gtest.h>

#include "sheath/errors.hpp"
#include "sheath/params.hpp"
#include "sheath/sagdeev.hpp"
#include "support.hpp"

namespace sheath {
namespace {

using testing::base_params;
using testing::code_of;

TEST(Classify, ReferenceExamples) {
  EXPECT_EQ(classify_regime(base_params(-std::sqrt(2.0), 0)).kind, RegimeKind::Degenerate);
  EXPECT_EQ(classify_regime(base_params(-2.0, 0)).kind, RegimeKind::Nondegenerate);
  EXPECT_EQ(classify_regime(base_params(-1.2, 0)).kind, RegimeKind::ForbiddenBand);
  EXPECT_EQ(classify_regime(base_params(-0.5, 0)).kind, RegimeKind::Subsonic);
}

TEST(Classify, SonicEqualityIsSubsonic) {
  EXPECT_EQ(classify_regime(base_params(-1.0, 0)).kind, RegimeKind::Subsonic);
}

TEST(Classify, MarginIsDistanceToNearestThreshold) {
  EXPECT_NEAR(classify_regime(base_params(-2.0, 0)).margin, 2.0, 1e-15);
  EXPECT_NEAR(classify_regime(base_params(-1.2, 0)).margin, 0.44, 1e-15);
}

TEST(Classify, ToleranceBandAroundDegenerateLine) {
  const double u2 = 2.0;
  EXPECT_EQ(classify_regime(base_params(-std::sqrt(u2 * (1 + 1e-10)), 0)).kind,
            RegimeKind::Degenerate);
  EXPECT_EQ(classify_regime(base_params(-std::sqrt(u2 * (1 + 1e-6)), 0)).kind,
            RegimeKind::Nondegenerate);
  EXPECT_EQ(classify_regime(base_params(-std::sqrt(u2 * (1 - 1e-6)), 0)).kind,
            RegimeKind::ForbiddenBand);
  EXPECT_EQ(classify_regime(base_params(-std::sqrt(u2 * (1 + 1e-6)), 0), 1e-5).kind,
            RegimeKind::Degenerate);
}

TEST(Classify, RejectsOutgoingFlow) {
  EXPECT_EQ(code_of([] { classify_regime(base_params(1.0, 0)); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { classify_regime(base_params(0.0, 0)); }), ErrorCode::InvalidParams);
}

TEST(Params, ValidateRejectsBadConstants) {
  auto p = base_params(-2, 0);
  p.gamma = 1.0;
  EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::InvalidParams);
  p = base_params(-2, 0);
  p.m = 0.0;
  EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::InvalidParams);
  p = base_params(-2, 0);
  p.T_inf = std::nan("");
  EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::InvalidParams);
  EXPECT_EQ(PlasmaParams::n_inf, 1.0);
}

TEST(Classify, InvariantUnderMassVelocityRescaling) {
  auto g = testing::rng(10);
  for (int k = 0; k < 200; ++k) {
    auto p = base_params(-testing::uniform(g, 0.1, 3.0), 0);
    p.m = testing::uniform(g, 0.2, 5.0);
    p.T_inf = testing::uniform(g, 0.1, 2.0);
    p.gamma = testing::uniform(g, 1.05, 3.0);
    const double s = testing::uniform(g, 0.1, 10.0);
    auto q = p;
    q.m = p.m / s;
    q.u_inf = p.u_inf * std::sqrt(s);
    const auto a = classify_regime(p);
    const auto b = classify_regime(q);
    EXPECT_EQ(a.kind, b.kind) << "m=" << p.m << " u=" << p.u_inf << " s=" << s;
  }
}

TEST(DerivedConstants, DegenerateReference) {
  const auto d = derived_constants(testing::degenerate());
  EXPECT_NEAR(d.c_crit, std::cbrt(2.0), 1e-15);
  ASSERT_TRUE(d.Gamma.has_value());
  EXPECT_NEAR(*d.Gamma, std::sqrt(5.0 / 12.0), 1e-15);
  EXPECT_NEAR(d.f_at_c, -0.11011842515769025, 1e-14);
}

TEST(DerivedConstants, GammaOnlyOnDegenerateLine) {
  EXPECT_FALSE(derived_constants(testing::nondegenerate()).Gamma.has_value());
}

TEST(DerivedConstants, SonicCriticalDensityIsOne) {
  EXPECT_DOUBLE_EQ(critical_density(base_params(-1.0, 0)), 1.0);
}

TEST(DerivedConstants, FAtCriticalMatchesF) {
  auto g = testing::rng(11);
  for (int k = 0; k < 50; ++k) {
    auto p = base_params(-testing::uniform(g, 1.5, 4.0), 0);
    p.gamma = testing::uniform(g, 1.1, 3.0);
    const auto d = derived_constants(p);
    const double fc = f(d.c_crit, p);
    EXPECT_NEAR(d.f_at_c, fc, 1e-12 * std::max(1.0, std::abs(fc)));
  }
}

TEST(CharacteristicSpeeds, UnitMassCollapse) {
  auto p = base_params(-2.0, 0);
  // gamma R T = 1
  const auto s = characteristic_speeds(-2.0, 0.5, p);
  EXPECT_NEAR(s.lambda1, -3.0, 1e-15);
  EXPECT_NEAR(s.lambda2, -2.0, 1e-15);
  EXPECT_NEAR(s.lambda3, -1.0, 1e-15);
}

TEST(CharacteristicSpeeds, ZeroVelocitySymmetry) {
  auto g = testing::rng(12);
  for (int k = 0; k < 20; ++k) {
    auto p = base_params(-1.0, 0);
    p.m = testing::uniform(g, 0.1, 4.0);
    const auto s = characteristic_speeds(0.0, testing::uniform(g, 0.1, 3.0), p);
    EXPECT_EQ(s.lambda2, 0.0);
    EXPECT_NEAR(s.lambda1, -s.lambda3, 1e-14);
  }
}

TEST(CharacteristicSpeeds, OrderedAndNegativeAtSupersonicFarField) {
  auto g = testing::rng(13);
  int supersonic = 0;
  for (int k = 0; k < 300; ++k) {
    auto p = base_params(-testing::uniform(g, 0.1, 4.0), 0);
    p.m = testing::uniform(g, 0.2, 5.0);
    p.gamma = testing::uniform(g, 1.05, 3.0);
    p.T_inf = testing::uniform(g, 0.1, 2.0);
    const auto s = characteristic_speeds(p.u_inf, p.T_inf, p);
    EXPECT_LE(s.lambda1, s.lambda2);
    EXPECT_LE(s.lambda2, s.lambda3);
    if (classify_regime(p).supersonic()) {
      ++supersonic;
      EXPECT_LT(s.lambda3, 0.0);
    }
  }
  EXPECT_GT(supersonic, 20);
}

TEST(CharacteristicSpeeds, DegenerateFarFieldAllNegative) {
  const auto p = testing::degenerate();
  const auto s = characteristic_speeds(p.u_inf, p.T_inf, p);
  EXPECT_LT(s.lambda3, 0.0);
}

}  // namespace
}  // namespace sheath
