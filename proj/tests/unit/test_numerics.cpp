#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "sheath/numerics.hpp"
#include "support.hpp"

namespace sheath::numerics {
namespace {

TEST(Integrate, PolynomialAndOscillatory) {
  const auto cubic = integrate([](double x) { return x * x * x; }, 0.0, 2.0, 1e-14);
  EXPECT_NEAR(cubic.value, 4.0, 1e-13);
  const auto s = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
}

TEST(Integrate, EndpointSingularityErrorIsBounded) {
  // Bisection gains only sqrt(2) per level next to x^{-1/2}; the depth cap
  // stops it near 1e-6, and the reported error has to cover that.
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(r.value, 2.0, 1e-5);
  EXPECT_GE(r.error, std::abs(r.value - 2.0));
}

TEST(Integrate, ReversedLimitsFlipSign) {
  const auto a = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
  const auto b = integrate([](double x) { return std::exp(x); }, 1.0, 0.0, 1e-13);
  EXPECT_NEAR(a.value, -b.value, 1e-14);
  EXPECT_NEAR(a.value, std::numbers::e - 1.0, 1e-13);
}

TEST(SolveBracketed, FindsCubeRoot) {
  const auto r = solve_bracketed(
      [](double x) { return std::pair{x * x * x - 2.0, 3.0 * x * x}; }, 1.0, 0.0, 2.0);
  EXPECT_NEAR(r.x, std::cbrt(2.0), 1e-14);
}

TEST(SolveBracketed, SurvivesFlatDerivative) {
  // f'(0) = 0 at the initial guess; bisection has to take over.
  const auto r = solve_bracketed([](double x) { return std::pair{x * x * x - 1.0, 3.0 * x * x}; },
                                 0.0, -1.0, 3.0);
  EXPECT_NEAR(r.x, 1.0, 1e-13);
}

TEST(Tridiagonal, MatchesDenseSolveOnRandomSystems) {
  auto g = sheath::testing::rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial;
    std::vector<double> lo(n), di(n), up(n), x(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = sheath::testing::uniform(g, -1, 1);
      up[i] = sheath::testing::uniform(g, -1, 1);
      di[i] = 3.0 + sheath::testing::uniform(g, 0, 1);  // diagonally dominant
      x[i] = sheath::testing::uniform(g, -5, 5);
    }
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = di[i] * x[i] + (i > 0 ? lo[i] * x[i - 1] : 0.0) + (i + 1 < n ? up[i] * x[i + 1] : 0.0);
    }
    solve_tridiagonal(lo, di, up, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(rhs[i], x[i], 1e-12);
    }
  }
}

TEST(FdWeights, ClassicStencils) {
  const std::vector<double> centred{-1.0, 0.0, 1.0};
  const auto d1 = fd_weights(1, 0.0, centred);
  EXPECT_NEAR(d1[0], -0.5, 1e-15);
  EXPECT_NEAR(d1[1], 0.0, 1e-15);
  EXPECT_NEAR(d1[2], 0.5, 1e-15);
  const auto d2 = fd_weights(2, 0.0, centred);
  EXPECT_NEAR(d2[0], 1.0, 1e-15);
  EXPECT_NEAR(d2[1], -2.0, 1e-15);
  EXPECT_NEAR(d2[2], 1.0, 1e-15);
  const std::vector<double> forward{0.0, 1.0, 2.0};
  const auto f1 = fd_weights(1, 0.0, forward);
  EXPECT_NEAR(f1[0], -1.5, 1e-15);
  EXPECT_NEAR(f1[1], 2.0, 1e-15);
  EXPECT_NEAR(f1[2], -0.5, 1e-15);
}

TEST(FdWeights, ExactOnPolynomialsOfStencilDegree) {
  const std::vector<double> nodes{-2.0, -0.5, 0.3, 1.0, 2.5};
  const auto w = fd_weights(3, 0.1, nodes);
  // third derivative of x^4 at 0.1 is 24 * 0.1
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    acc += w[i] * std::pow(nodes[i], 4);
  }
  EXPECT_NEAR(acc, 2.4, 1e-11);
}

TEST(FitLine, ExactLine) {
  const std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) {
    y.push_back(1.5 - 0.25 * v);
  }
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f.slope, -0.25, 1e-15);
  EXPECT_NEAR(f.intercept, 1.5, 1e-14);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-15);
}

TEST(MonotoneCubic, PreservesMonotoneData) {
  auto g = sheath::testing::rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x{0.0}, y{0.0};
    for (int i = 0; i < 12; ++i) {
      x.push_back(x.back() + sheath::testing::uniform(g, 0.1, 2.0));
      y.push_back(y.back() + sheath::testing::uniform(g, 0.0, 3.0));
    }
    MonotoneCubic interp(x, y);
    double prev = interp(x.front());
    for (int k = 1; k <= 500; ++k) {
      const double xs = x.front() + (x.back() - x.front()) * k / 500.0;
      const double v = interp(xs);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_NEAR(interp(x[i]), y[i], 1e-12);
    }
  }
}

}  // namespace
}  // namespace sheath::numerics
