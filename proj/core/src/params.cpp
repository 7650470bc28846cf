#include "sheath/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sheath/errors.hpp"

namespace sheath {

void PlasmaParams::validate() const {
  const bool finite = std::isfinite(m) && std::isfinite(R) && std::isfinite(gamma) &&
                      std::isfinite(T_inf) && std::isfinite(u_inf) && std::isfinite(phi_b);
  if (!finite) {
    raise(ErrorCode::InvalidParams, "parameters must be finite");
  }
  if (!(m > 0.0)) raise(ErrorCode::InvalidParams, "ion mass m must be positive");
  if (!(R > 0.0)) raise(ErrorCode::InvalidParams, "gas constant R must be positive");
  if (!(gamma > 1.0)) raise(ErrorCode::InvalidParams, "adiabatic index gamma must exceed 1");
  if (!(T_inf > 0.0)) raise(ErrorCode::InvalidParams, "far-field temperature T_inf must be positive");
}

std::string_view to_string(RegimeKind kind) noexcept {
  switch (kind) {
    case RegimeKind::Subsonic: return "Subsonic";
    case RegimeKind::ForbiddenBand: return "ForbiddenBand";
    case RegimeKind::Degenerate: return "Degenerate";
    case RegimeKind::Nondegenerate: return "Nondegenerate";
  }
  return "Unknown";
}

Regime classify_regime(const PlasmaParams& params, double tol) {
  params.validate();
  if (!(tol >= 0.0)) {
    raise(ErrorCode::InvalidParams, "classification tolerance must be non-negative");
  }
  if (!(params.u_inf < 0.0)) {
    std::ostringstream msg;
    msg << "sheath formation requires incoming flow u_inf < 0 (got u_inf = " << params.u_inf << ")";
    raise(ErrorCode::InvalidParams, msg.str());
  }
  const double u2 = params.u_inf * params.u_inf;
  const double sonic = params.sound_energy() / params.m;
  const double bohm = (params.sound_energy() + 1.0) / params.m;
  const double band = tol * u2;

  Regime regime;
  regime.margin = std::min(std::abs(u2 - sonic), std::abs(u2 - bohm));
  if (std::abs(u2 - bohm) <= band) {
    regime.kind = RegimeKind::Degenerate;
  } else if (u2 > bohm) {
    regime.kind = RegimeKind::Nondegenerate;
  } else if (u2 <= sonic + band) {
    regime.kind = RegimeKind::Subsonic;
  } else {
    regime.kind = RegimeKind::ForbiddenBand;
  }
  return regime;
}

double critical_density(const PlasmaParams& params) {
  params.validate();
  return std::pow(params.mach_energy() / params.sound_energy(), 1.0 / (params.gamma + 1.0));
}

double degenerate_decay_constant(const PlasmaParams& params) {
  const double g = params.gamma;
  return std::sqrt(((g * g + g) * params.R * params.T_inf + 2.0) / 12.0);
}

DerivedConstants derived_constants(const PlasmaParams& params, double tol) {
  const Regime regime = classify_regime(params, tol);
  DerivedConstants out;
  out.c_crit = critical_density(params);
  // At the critical point gamma R T c^{gamma+1} = m u^2, which folds the
  // second term of f into a power of c.
  const double g = params.gamma;
  const double cg = std::pow(out.c_crit, g - 1.0);
  out.f_at_c = params.sound_energy() / (g - 1.0) * (cg - 1.0) +
               0.5 * params.sound_energy() * cg - 0.5 * params.mach_energy();
  if (regime.kind == RegimeKind::Degenerate) {
    out.Gamma = degenerate_decay_constant(params);
  }
  return out;
}

CharacteristicSpeeds characteristic_speeds(double u, double T, const PlasmaParams& params) {
  if (!(T > 0.0)) {
    raise(ErrorCode::DomainError, "temperature must be positive for characteristic speeds");
  }
  const double m = params.m;
  const double root = std::sqrt((m - 1.0) * (m - 1.0) * u * u + 4.0 * params.gamma * params.R * T);
  return {0.5 * ((m + 1.0) * u - root), u, 0.5 * ((m + 1.0) * u + root)};
}

}  // namespace sheath
