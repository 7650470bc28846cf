#pragma once

#include <optional>
#include <string_view>

namespace sheath {

/// Physical constants of the ion fluid and the wall. The far-field density is
/// normalised to one (quasi-neutrality at infinity) and is not a free input.
struct PlasmaParams {
  double m = 1.0;       ///< ion mass
  double R = 1.0;       ///< gas constant
  double gamma = 2.0;   ///< adiabatic index, > 1
  double T_inf = 0.5;   ///< far-field temperature
  double u_inf = -2.0;  ///< far-field velocity (incoming flow is negative)
  double phi_b = 0.0;   ///< wall potential

  static constexpr double n_inf = 1.0;

  /// m u_inf^2
  double mach_energy() const noexcept { return m * u_inf * u_inf; }
  /// gamma R T_inf
  double sound_energy() const noexcept { return gamma * R * T_inf; }

  /// Throws InvalidParams unless m, R, T_inf > 0 and gamma > 1 (all finite).
  void validate() const;
};

enum class RegimeKind { Subsonic, ForbiddenBand, Degenerate, Nondegenerate };

std::string_view to_string(RegimeKind kind) noexcept;

struct Regime {
  RegimeKind kind = RegimeKind::Subsonic;
  /// Distance of u_inf^2 from the nearest of the two thresholds.
  double margin = 0.0;

  bool supersonic() const noexcept {
    return kind == RegimeKind::Degenerate || kind == RegimeKind::Nondegenerate;
  }
};

/// Relative tolerance on u_inf^2 used to recognise the marginal Bohm case.
inline constexpr double kClassifyTolerance = 1e-9;

/// Splits parameter space along u_inf^2 = gamma R T_inf / m and
/// u_inf^2 = (gamma R T_inf + 1) / m. The tolerance band is tol * u_inf^2.
/// Requires incoming flow: u_inf >= 0 throws InvalidParams.
Regime classify_regime(const PlasmaParams& params, double tol = kClassifyTolerance);

struct DerivedConstants {
  double c_crit = 1.0;            ///< critical density, the only critical point of f
  std::optional<double> Gamma;    ///< algebraic decay constant, degenerate regime only
  double f_at_c = 0.0;            ///< f(c_crit)
};

DerivedConstants derived_constants(const PlasmaParams& params, double tol = kClassifyTolerance);

/// (m u^2 / (gamma R T))^{1/(gamma+1)}
double critical_density(const PlasmaParams& params);

/// sqrt(((gamma^2 + gamma) R T_inf + 2) / 12), evaluated regardless of regime.
double degenerate_decay_constant(const PlasmaParams& params);

struct CharacteristicSpeeds {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

/// Eigenvalues of the quasilinear transport system at (u, T). Pure formula
/// evaluation: any sign of u is accepted. Requires T > 0.
CharacteristicSpeeds characteristic_speeds(double u, double T, const PlasmaParams& params);

}  // namespace sheath
