#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sheath/params.hpp"
#include "sheath/sagdeev.hpp"

namespace sheath {

struct GridRequest {
  std::optional<double> length;  ///< domain length; regime default when unset
  double max_length = 1.0e4;     ///< cap applied to the default length
  std::size_t cells = 0;         ///< 0 selects length / default spacing
};

struct StationaryOptions {
  double tail_eps = 1e-6;  ///< analytic tail once |phi| < tail_eps |phi_b|
  double quad_tol = kDefaultQuadTol;
  double classify_tol = kClassifyTolerance;
  std::size_t singularity_samples = 2000;
};

struct ProfileMeta {
  double tail_eps = 0.0;
  double quad_tol = 0.0;
  double classify_tol = 0.0;
  double tail_rate = 0.0;  ///< sqrt(V''(0)); zero in the marginal case
  std::optional<double> x_cut;  ///< start of the analytic tail, if reached
};

/// Stationary sheath on a strictly increasing grid starting at x = 0.
struct SheathProfile {
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> n;
  std::vector<double> u;
  std::vector<double> T;
  Regime regime;
  PlasmaParams params;
  ProfileMeta meta;

  std::size_t size() const noexcept { return x.size(); }
  double length() const noexcept { return x.empty() ? 0.0 : x.back(); }
};

/// Regime-dependent default: 20 / sqrt(V''(0)) for the non-degenerate case,
/// 40 / (Gamma sqrt(phi_b)) for the degenerate one.
double default_domain_length(const PlasmaParams& params, const Regime& regime);

/// Monotone sheath profile from the first integral phi_x^2 / 2 = V(phi).
/// Node positions are obtained by inverting x(phi) = int dphi / sqrt(2V)
/// cell by cell, with the integral taken in the density variable.
SheathProfile solve_stationary(const PlasmaParams& params, const GridRequest& grid,
                               const StationaryOptions& options = {});

/// Same construction on caller-provided nodes (x[0] must be 0).
SheathProfile solve_stationary_on(const PlasmaParams& params, std::span<const double> x,
                                  const StationaryOptions& options = {});

/// Interpolates phi monotonically onto new nodes and rebuilds n, u, T from
/// the pointwise identities.
SheathProfile resample(const SheathProfile& profile, std::span<const double> x);

struct ResidualReport {
  double mass_flux = 0.0;  ///< sup |n u - u_inf|
  double momentum = 0.0;   ///< sup |f(n) - phi|
  double entropy = 0.0;    ///< sup |T - T_inf n^{gamma-1}|
  double poisson = 0.0;    ///< sup over interior nodes of |phi_xx - (n - e^{-phi})|
};

ResidualReport residual_check(const SheathProfile& profile);

enum class TailModel { Exponential, Algebraic };

struct TailReport {
  TailModel model = TailModel::Exponential;
  /// Exponential: fitted decay rate of |phi|. Algebraic: fitted slope of
  /// log|phi| against log G(x).
  double fitted = 0.0;
  double predicted = 0.0;
  double r_squared = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

TailReport tail_decay_fit(const SheathProfile& profile, const Regime& regime);

}  // namespace sheath
