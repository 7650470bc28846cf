#pragma once

#include <cstddef>
#include <vector>

#include "sheath/params.hpp"

namespace sheath {

/// Integrated momentum balance along the stationary flow:
/// f(n) = gamma R T/(gamma-1) (n^{gamma-1} - 1) + m u^2/2 (n^{-2} - 1).
/// Throws DomainError for n <= 0.
double f(double n, const PlasmaParams& params);

/// f'(n) = (gamma R T n^{gamma+1} - m u^2) / n^3.
double f_prime(double n, const PlasmaParams& params);

/// f(1 + delta) evaluated without cancellation for small |delta|.
double f_offset(double delta, const PlasmaParams& params);

struct InverseOptions {
  double tol = 1e-12;     ///< admissible |f(n) - phi|
  double n_floor = 1e-8;  ///< lower end of the search bracket
};

/// Inverse of f on the branch (0, c_crit] that contains the far-field state
/// n = 1. Only defined for supersonic flow (c_crit > 1).
class BranchedInverse {
 public:
  explicit BranchedInverse(const PlasmaParams& params, InverseOptions options = {});

  /// f(c_crit): the smallest potential the branch can represent.
  double domain_lo() const noexcept { return f_at_c_; }
  double c_crit() const noexcept { return c_crit_; }

  /// n with f(n) = phi. Throws BranchExceeded when phi < f(c_crit).
  double operator()(double phi) const;

  /// n - 1 for the same root, accurate when phi is close to zero.
  double offset(double phi) const;

 private:
  PlasmaParams params_;
  InverseOptions options_;
  double c_crit_;
  double f_at_c_;
};

double f_inverse(double phi, const PlasmaParams& params, const InverseOptions& options = {});

inline constexpr double kDefaultQuadTol = 1e-12;

/// V(phi) = int_0^phi [f^{-1}(eta) - exp(-eta)] d eta by adaptive quadrature.
double sagdeev_V(double phi, const PlasmaParams& params, double quad_tol = kDefaultQuadTol);

/// The same potential expressed through the density n = 1 + delta on the
/// branch, using the exact antiderivative
///   V = m u^2 (1/n - 1) + R T (n^gamma - 1) + exp(-f(n)) - 1,
/// switched to its Taylor series in delta near the far-field state.
class SagdeevSeries {
 public:
  explicit SagdeevSeries(const PlasmaParams& params);

  double potential(double delta) const;
  /// Taylor coefficients v_k of V in powers of delta (v_0 = v_1 = 0).
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  static constexpr double kSeriesRadius = 0.05;

 private:
  PlasmaParams params_;
  std::vector<double> coeffs_;
};

/// V''(0) = 1 + 1 / f'(1) = 1 - 1/(m u^2 - gamma R T).
double sagdeev_curvature(const PlasmaParams& params);

struct ExistenceReport {
  bool exists = false;
  double V_at_phib = 0.0;  ///< NaN when phi_b lies below the branch
  double f_at_c = 0.0;
};

/// Existence of the monotone stationary profile in the supersonic regimes:
/// V(phi_b) >= 0 and phi_b >= f(c_crit). phi_b = 0 always exists.
ExistenceReport existence_check(const PlasmaParams& params, double quad_tol = kDefaultQuadTol,
                                double classify_tol = kClassifyTolerance);

struct SagdeevRow {
  double phi = 0.0;
  double n = 0.0;
  double V = 0.0;
};

/// Uniform table of (phi, f^{-1}(phi), V(phi)) on [phi_lo, phi_hi].
std::vector<SagdeevRow> sagdeev_table(const PlasmaParams& params, double phi_lo, double phi_hi,
                                      std::size_t count, double quad_tol = kDefaultQuadTol);

}  // namespace sheath
