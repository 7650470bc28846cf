#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sheath/params.hpp"
#include "sheath/stationary.hpp"
#include "sheath/weights.hpp"

namespace sheath {

/// Uniform grid x_i = i h, i = 0..N, with h = L / N.
struct GridSpec {
  double L = 1.0;
  std::size_t N = 16;

  double h() const noexcept { return L / static_cast<double>(N); }
  double x(std::size_t i) const noexcept;
  std::size_t nodes() const noexcept { return N + 1; }
  std::vector<double> coordinates() const;

  /// Throws DomainError unless L > 0 and N >= 16.
  void validate() const;
};

/// Grid of an evolution-ready profile. Throws DomainError if the profile
/// nodes are not uniform.
GridSpec grid_of(const SheathProfile& profile);

/// Time-dependent fields (v = log n, u, T, phi) on N + 1 nodes. The last node
/// carries the far-field data and is never updated.
struct EvolutionState {
  double t = 0.0;
  GridSpec grid;
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> T;
  std::vector<double> phi;
  PlasmaParams params;
};

struct PoissonOptions {
  double tol = 1e-10;
  std::size_t max_iter = 50;
};

/// Newton solve of the centred discretisation of phi_xx = e^v - e^{-phi}
/// with phi(0) = phi_b and phi(L) = phi_L. Converged when the max-norm of the
/// interior residual is at most tol. Throws NewtonDivergence otherwise.
std::vector<double> poisson_solve(std::span<const double> v, double phi_b, double phi_L,
                                  const GridSpec& grid, std::span<const double> guess,
                                  const PoissonOptions& options = {});

/// Interior residual (phi_{i-1} - 2 phi_i + phi_{i+1}) / h^2 - e^{v_i} + e^{-phi_i}
/// (zero at both ends).
std::vector<double> poisson_residual(std::span<const double> v, std::span<const double> phi,
                                     double h);

/// Action of the tridiagonal Jacobian of poisson_residual on a direction d
/// (d must vanish at both ends).
std::vector<double> poisson_jacobian_apply(std::span<const double> phi,
                                           std::span<const double> d, double h);

struct EvolutionOptions {
  double cfl = 0.4;
  bool strict_upwind = true;  ///< reject states with a non-negative lambda3
  PoissonOptions poisson;
};

struct TransportRates {
  std::vector<double> dv;
  std::vector<double> du;
  std::vector<double> dT;
};

/// Time derivatives of (v, u, T) from
///   v_t + u v_x + u_x = 0,
///   m (u_t + u u_x) + R (T_x + T v_x) = phi_x,
///   T_t + u T_x + (gamma - 1) T u_x = 0,
/// with second-order forward differences (first order at node N - 1) and
/// the far-field node held fixed.
TransportRates transport_rhs(const EvolutionState& state, const EvolutionOptions& options = {});

/// Largest characteristic speed magnitude on the grid.
double max_wave_speed(const EvolutionState& state);

/// CFL-limited time step cfl * h / max_wave_speed.
double stable_dt(const EvolutionState& state, const EvolutionOptions& options = {});

/// One two-stage SSP Runge-Kutta step with a Poisson solve after each stage.
/// Throws CFLViolation, PositivityLoss, CharacteristicSignViolation.
EvolutionState step(const EvolutionState& state, double dt, const EvolutionOptions& options = {});

struct Observer {
  std::string name;
  std::function<double(const EvolutionState&)> fn;
};

struct DiagnosticsSeries {
  std::vector<std::string> names;
  std::vector<double> t;
  std::vector<std::vector<double>> values;  ///< values[k][j]: sample k, observer j
};

/// Advances to t_end, sampling the observers at t = 0, every observer_period
/// and at t_end. on_sample (optional) sees every sampled state.
DiagnosticsSeries evolve(const EvolutionState& initial, double t_end, double observer_period,
                         const std::vector<Observer>& observers,
                         const EvolutionOptions& options = {},
                         const std::function<void(const EvolutionState&)>& on_sample = {});

enum class BumpShape { Gaussian, CompactBump };

struct PerturbationSpec {
  BumpShape shape = BumpShape::Gaussian;
  double amplitude = 1e-3;
  double center = 0.0;  ///< absolute position
  double width = 1.0;
  bool in_v = false;  ///< perturb v by amplitude
  bool in_u = true;   ///< perturb u by amplitude |u_inf|
  bool in_T = false;  ///< perturb T by amplitude T_inf
  WeightSpec weight_compat = AlgebraicWeight{4.0, 0.1};
};

/// Bump profile of unit height evaluated at x.
double bump(BumpShape shape, double x, double center, double width);

/// Stationary state on the profile grid, without perturbation.
EvolutionState state_from_profile(const SheathProfile& profile,
                                  const EvolutionOptions& options = {});

/// base plus a localised bump in the selected components; phi re-solved.
/// The far-field node is left unperturbed.
EvolutionState perturb_state(const EvolutionState& base, const PerturbationSpec& spec,
                             const EvolutionOptions& options = {});

/// Stationary state plus a localised bump; phi from poisson_solve. The far-field
/// node is left unperturbed. Throws CharacteristicSignViolation when the
/// perturbed state has lambda3 >= 0 somewhere.
EvolutionState make_initial_perturbation(const SheathProfile& profile,
                                         const PerturbationSpec& spec,
                                         const EvolutionOptions& options = {});

/// Perturbation of a state against a reference state on the same grid.
struct PerturbationView {
  std::vector<double> x;
  std::vector<double> varphi;  ///< v - v~
  std::vector<double> psi;     ///< u - u~
  std::vector<double> zeta;    ///< T - T~
  std::vector<double> sigma;   ///< phi - phi~
  std::vector<double> n_ref;   ///< n~
  std::vector<double> phi_ref; ///< phi~
  std::vector<double> T;       ///< full temperature
  PlasmaParams params;
};

PerturbationView perturbation(const EvolutionState& state, const EvolutionState& reference);

/// Relaxes a stationary state under the discrete dynamics until the max-norm
/// change over a unit of time falls below tol, yielding the scheme's own
/// equilibrium. Throws ConvergenceFailure after t_max.
EvolutionState discrete_equilibrium(const EvolutionState& start, double tol = 1e-12,
                                    double t_max = 1e4, const EvolutionOptions& options = {});

}  // namespace sheath
