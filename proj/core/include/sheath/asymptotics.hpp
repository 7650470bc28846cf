#pragma once

#include <string_view>
#include <vector>

#include "sheath/params.hpp"
#include "sheath/stationary.hpp"

namespace sheath {

/// Coefficients of the algebraic far-field expansion in the marginal Bohm
/// case: d^i U / dx^i ~ -c_i G(x)^{-(i+2)}.
struct ExpansionConstants {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double Gamma = 0.0;

  double operator[](int i) const;
};

ExpansionConstants expansion_constants(const PlasmaParams& params);

/// G(x) = Gamma x + phi_b^{-1/2}. Throws InvalidParams outside the degenerate
/// regime or for phi_b <= 0.
double gauge(double x, const PlasmaParams& params, double classify_tol = kClassifyTolerance);

/// Profile quantities that share the leading behaviour -G^{-2}.
enum class Observable {
  NegPotential,     ///< -phi
  DensityOffset,    ///< n - 1
  LogDensity,       ///< log n
  VelocityRatio,    ///< 1 - u / u_inf
  TemperatureRatio  ///< (T / T_inf - 1) / (gamma - 1)
};

inline constexpr Observable kObservables[] = {
    Observable::NegPotential, Observable::DensityOffset, Observable::LogDensity,
    Observable::VelocityRatio, Observable::TemperatureRatio};

std::string_view to_string(Observable u) noexcept;

/// Observable sampled on the profile nodes.
std::vector<double> observable(const SheathProfile& profile, Observable u);

struct ExpansionRow {
  Observable U = Observable::NegPotential;
  int order = 0;
  double sup = 0.0;            ///< sup_x |d^i U G^{i+2} + c_i|
  double sup_over_phib = 0.0;
  double error_floor = 0.0;    ///< finite-difference and round-off estimate of the same sup
};

struct ExpansionReport {
  double phi_b = 0.0;
  std::vector<ExpansionRow> rows;  ///< empty for the trivial profile
};

/// Measures the expansion residuals for every observable and order up to
/// max_order (0..3). The last 5 cells are excluded from the sup.
/// Throws InsufficientResolution when the error floor exceeds the measured
/// sup for an order >= 2.
ExpansionReport verify_expansion(const SheathProfile& profile, int max_order = 3);

/// d^i U / dx^i on the profile nodes: fourth-order stencils for i = 1, 2,
/// second-order for i = 3, one-sided near the ends. stride > 1 evaluates the
/// same stencil on the coarser subgrid (used for the Richardson estimate).
std::vector<double> profile_derivative(const std::vector<double>& x,
                                       const std::vector<double>& values, int order,
                                       int stride = 1);

/// lambda (lambda - 1)(lambda - 2) - 12 (2 lambda / (gamma + 1) + 2)
double lambda0_cubic(double lambda, double gamma);

/// Unique real root of lambda0_cubic in (4, 5.5694). Requires gamma > 1.
double lambda0(double gamma);

/// Real root of lambda (lambda - 1)(lambda - 2) - 12 (lambda + 2), the
/// gamma -> 1 limit of lambda0.
double root_5_5693();

}  // namespace sheath
