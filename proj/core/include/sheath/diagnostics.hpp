#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sheath/evolution.hpp"
#include "sheath/params.hpp"
#include "sheath/weights.hpp"

namespace sheath {

/// (int W sum_{j <= order} sum_fields (d^j f)^2 dx)^{1/2} by the trapezoidal
/// rule on a uniform grid. Derivatives are centred second order inside and
/// one-sided second order at the ends.
double weighted_norm(std::span<const double> x, const std::vector<std::span<const double>>& fields,
                     const WeightSpec& weight, int order);

/// Derivative used by weighted_norm (exposed for testing).
std::vector<double> grid_derivative(std::span<const double> f, double h);

enum class DecayModel { Exponential, Algebraic };

struct DecayFit {
  DecayModel model = DecayModel::Exponential;
  double mu = 0.0;        ///< exponential: norm ~ e^{-mu t}
  double exponent = 0.0;  ///< algebraic: norm ~ (1 + beta t)^{exponent}
  double beta = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of log(norm) against t (exponential) or log(1 + beta t)
/// (algebraic) over the window, by default [t_end / 2, t_end].
/// Throws DegenerateFit for fewer than 10 samples, non-positive norms or a
/// series constant to round-off.
DecayFit decay_fit(std::span<const double> t, std::span<const double> norm, DecayModel model,
                   std::optional<std::pair<double, double>> window = std::nullopt,
                   double beta = 1.0);

/// int W [e^{-phi~} E0 + E1x + n~^2 varphi^2 / 2] dx with
/// E0 = n~/2 (R T varphi^2 + m psi^2 + R zeta^2 / ((gamma - 1) T)) and E1x the
/// same with x-derivatives.
double energy_functional(const PerturbationView& view, const WeightSpec& weight);

struct QuadraticSample {
  double x = 0.0;
  double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0, q5 = 0.0;
  double B = 0.0;
  double S = 0.0;
  double disc12 = 0.0;  ///< q2^2 - 4 q1 q3
  double disc35 = 0.0;  ///< q5^2 - 4 q3 q4
  double cubic = 0.0;   ///< q1 q5^2 + q4 q2^2 - 4 q1 q3 q4
  double bound = 0.0;   ///< -cubic B^2, the local value of c
  double min_eigen_scaled = 0.0;  ///< smallest eigenvalue of the form times B^2
};

struct QuadraticFormReport {
  double epsilon = 0.0;
  double beta = 0.0;
  double lambda0 = 0.0;
  std::vector<QuadraticSample> samples;
  bool positive = false;        ///< q1, q3, q4 > 0 everywhere
  bool discriminants = false;   ///< disc12 < 0 and disc35 < 0 everywhere
  bool cubic_bound = false;     ///< c > 0
  double c = 0.0;               ///< min over samples of -cubic B^2
  double c_eigen = 0.0;         ///< min over samples of the smallest eigenvalue times B^2
  bool pass = false;
};

/// Evaluates q1..q5 of the weighted energy estimate at each x sample and
/// checks positivity, the two discriminants and the cubic bound.
/// Throws InvalidParams outside the degenerate regime, for phi_b <= 0,
/// epsilon <= 0, beta <= 0 or beta > Gamma sqrt(phi_b).
QuadraticFormReport quadratic_form_check(const PlasmaParams& params, double epsilon, double beta,
                                         std::span<const double> x_samples,
                                         double classify_tol = kClassifyTolerance);

}  // namespace sheath
