#include "sheath/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "sheath/errors.hpp"

namespace sheath::numerics {

namespace {

using Kronrod15 = boost::math::quadrature::gauss_kronrod<double, 15>;

QuadratureResult integrate_recursive(const std::function<double(double)>& fn, double a,
                                     double b, double abs_tol, double rel_tol,
                                     unsigned depth) {
  double err = 0.0;
  double l1 = 0.0;
  const double value = Kronrod15::integrate(fn, a, b, 0, 0.0, &err, &l1);
  // Boost reports the Gauss-Kronrod difference on the reference interval
  // [-1, 1] without the Jacobian (L1 is rescaled, the error is not).
  err *= 0.5 * std::abs(b - a);
  // Below a few ulps of the L1 norm the error estimate is round-off.
  const double target = std::max({abs_tol, rel_tol * std::abs(value),
                                  50.0 * std::numeric_limits<double>::epsilon() * l1});
  if (err <= target || depth == 0) {
    return {value, err};
  }
  const double mid = 0.5 * (a + b);
  const auto left = integrate_recursive(fn, a, mid, 0.5 * abs_tol, rel_tol, depth - 1);
  const auto right = integrate_recursive(fn, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
  return {left.value + right.value, left.error + right.error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b,
                           double abs_tol, double rel_tol, unsigned max_depth) {
  if (a == b) {
    return {};
  }
  return integrate_recursive(fn, a, b, abs_tol, rel_tol, max_depth);
}

double integrate_kronrod15(const std::function<double(double)>& fn, double a, double b) {
  if (a == b) {
    return 0.0;
  }
  return Kronrod15::integrate(fn, a, b, 0, 0.0);
}

RootResult solve_bracketed(const std::function<std::pair<double, double>(double)>& fn,
                           double guess, double lo, double hi, std::size_t max_iter) {
  if (!(lo < hi)) {
    raise(ErrorCode::ConvergenceFailure, "empty bracket for root solve");
  }
  guess = std::clamp(guess, lo, hi);
  std::uintmax_t iters = max_iter;
  const double root = boost::math::tools::newton_raphson_iterate(
      [&](double x) {
        const auto [value, slope] = fn(x);
        return std::make_tuple(value, slope);
      }, guess, lo, hi,
      std::numeric_limits<double>::digits - 2, iters);
  if (!std::isfinite(root) || iters >= max_iter) {
    raise(ErrorCode::ConvergenceFailure,
          "bracketed Newton did not converge in " + std::to_string(max_iter) + " iterations");
  }
  return {root, static_cast<std::size_t>(iters)};
}

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) {
    return;
  }
  std::vector<double> c(n, 0.0);
  double denom = diag[0];
  c[0] = n > 1 ? upper[0] / denom : 0.0;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= c[i] * rhs[i + 1];
  }
}

std::vector<double> fd_weights(int derivative, double x0, std::span<const double> offsets) {
  const int n = static_cast<int>(offsets.size());
  const int m = derivative;
  // delta[k][j] : weight of node j for derivative k using the first i+1 nodes.
  std::vector<std::vector<double>> delta(m + 1, std::vector<double>(n, 0.0));
  delta[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = offsets[0] - x0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          delta[k][i] = c1 * (k * delta[k - 1][i - 1] - c5 * delta[k][i - 1]) / c2;
        }
        delta[0][i] = -c1 * c5 * delta[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        delta[k][j] = (c4 * delta[k][j] - k * delta[k - 1][j]) / c3;
      }
      delta[0][j] = c4 * delta[0][j] / c3;
    }
    c1 = c2;
  }
  return delta[m];
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

struct MonotoneCubic::Impl {
  double x_lo;
  double x_hi;
  double y_lo;
  double y_hi;
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 4) {
    raise(ErrorCode::DomainError, "monotone cubic needs at least four matching samples");
  }
  const double x_lo = x.front();
  const double x_hi = x.back();
  const double y_lo = y.front();
  const double y_hi = y.back();
  impl_ = std::make_unique<Impl>(Impl{x_lo, x_hi, y_lo, y_hi,
                                      boost::math::interpolators::pchip<std::vector<double>>(
                                          std::move(x), std::move(y))});
}

MonotoneCubic::~MonotoneCubic() = default;
MonotoneCubic::MonotoneCubic(MonotoneCubic&&) noexcept = default;
MonotoneCubic& MonotoneCubic::operator=(MonotoneCubic&&) noexcept = default;

double MonotoneCubic::operator()(double x) const {
  if (x <= impl_->x_lo) {
    return impl_->y_lo;
  }
  if (x >= impl_->x_hi) {
    return impl_->y_hi;
  }
  return impl_->spline(x);
}

}  // namespace sheath::numerics
