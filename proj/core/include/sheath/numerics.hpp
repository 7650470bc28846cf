#pragma once

// Small numerical toolkit shared by the solver modules. Quadrature, bracketed
// root finding and monotone interpolation are thin wrappers over Boost.Math;
// the tridiagonal solve and finite-difference weights are local.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace sheath::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of fn over [a, b]. Refinement
/// stops once the estimated error is below max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b,
                           double abs_tol, double rel_tol = 0.0, unsigned max_depth = 30);

/// Fixed 15-point Kronrod rule on [a, b]; used for short smooth cells.
double integrate_kronrod15(const std::function<double(double)>& fn, double a, double b);

struct RootResult {
  double x = 0.0;
  std::size_t iterations = 0;
};

/// Newton iteration safeguarded by bisection inside [lo, hi]. fn returns
/// {value, derivative}; fn(lo) and fn(hi) must bracket a sign change.
RootResult solve_bracketed(const std::function<std::pair<double, double>(double)>& fn,
                           double guess, double lo, double hi, std::size_t max_iter = 200);

/// Thomas algorithm for a tridiagonal system. lower[i] multiplies x[i-1] in
/// row i (lower[0] unused), upper[i] multiplies x[i+1] (upper[n-1] unused).
/// Solves in place: rhs holds the solution on return.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

/// Finite-difference weights for the derivative of the given order at x0 on
/// the nodes `offsets` (Fornberg's recursion).
std::vector<double> fd_weights(int derivative, double x0, std::span<const double> offsets);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Monotone piecewise-cubic (PCHIP) interpolant through (x, y); x strictly
/// increasing. Evaluation outside the table clamps to the end values.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  ~MonotoneCubic();
  MonotoneCubic(MonotoneCubic&&) noexcept;
  MonotoneCubic& operator=(MonotoneCubic&&) noexcept;

  double operator()(double x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sheath::numerics
