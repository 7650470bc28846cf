#include "sheath/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sheath/errors.hpp"
#include "sheath/numerics.hpp"

namespace sheath {

namespace {

constexpr double kLambdaLo = 4.0;
constexpr double kLambdaHi = 5.5694;
constexpr int kExcludedCells = 5;

double solve_cubic(double coef) {
  // lambda (lambda - 1)(lambda - 2) - 12 (coef lambda + 2)
  const auto fn = [coef](double l) {
    const double value = l * (l - 1.0) * (l - 2.0) - 12.0 * (coef * l + 2.0);
    const double deriv = 3.0 * l * l - 6.0 * l + 2.0 - 12.0 * coef;
    return std::make_pair(value, deriv);
  };
  return numerics::solve_bracketed(fn, 0.5 * (kLambdaLo + kLambdaHi), kLambdaLo, kLambdaHi).x;
}

int accuracy_order(int derivative) { return derivative == 3 ? 2 : 4; }

}  // namespace

double ExpansionConstants::operator[](int i) const {
  switch (i) {
    case 0: return c0;
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
    default: raise(ErrorCode::DomainError, "expansion order must be in 0..3");
  }
}

ExpansionConstants expansion_constants(const PlasmaParams& params) {
  params.validate();
  ExpansionConstants c;
  const double k = (params.gamma * params.gamma + params.gamma) * params.R * params.T_inf + 2.0;
  c.Gamma = std::sqrt(k / 12.0);
  c.c0 = 1.0;
  c.c1 = -2.0 * c.Gamma;
  c.c2 = k / 2.0;
  c.c3 = -2.0 * c.Gamma * k;
  return c;
}

double gauge(double x, const PlasmaParams& params, double classify_tol) {
  if (classify_regime(params, classify_tol).kind != RegimeKind::Degenerate) {
    raise(ErrorCode::InvalidParams, "G(x) is only defined in the degenerate regime");
  }
  if (!(params.phi_b > 0.0)) {
    raise(ErrorCode::InvalidParams, "G(x) requires phi_b > 0");
  }
  return degenerate_decay_constant(params) * x + 1.0 / std::sqrt(params.phi_b);
}

std::string_view to_string(Observable u) noexcept {
  switch (u) {
    case Observable::NegPotential: return "-phi";
    case Observable::DensityOffset: return "n-1";
    case Observable::LogDensity: return "log n";
    case Observable::VelocityRatio: return "1-u/u_inf";
    case Observable::TemperatureRatio: return "(T/T_inf-1)/(gamma-1)";
  }
  return "?";
}

std::vector<double> observable(const SheathProfile& profile, Observable u) {
  const auto& p = profile.params;
  const std::size_t N = profile.size();
  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) {
    switch (u) {
      case Observable::NegPotential: out[i] = -profile.phi[i]; break;
      case Observable::DensityOffset: out[i] = profile.n[i] - 1.0; break;
      case Observable::LogDensity: out[i] = std::log(profile.n[i]); break;
      case Observable::VelocityRatio: out[i] = 1.0 - profile.u[i] / p.u_inf; break;
      case Observable::TemperatureRatio:
        out[i] = (profile.T[i] / p.T_inf - 1.0) / (p.gamma - 1.0);
        break;
    }
  }
  return out;
}

std::vector<double> profile_derivative(const std::vector<double>& x,
                                       const std::vector<double>& values, int order,
                                       int stride) {
  const auto N = static_cast<std::ptrdiff_t>(x.size());
  if (order == 0) {
    return values;
  }
  if (order < 0 || order > 3) {
    raise(ErrorCode::DomainError, "derivative order must be in 0..3");
  }
  const std::ptrdiff_t one_sided = order + accuracy_order(order);
  const std::ptrdiff_t s = stride;
  if ((one_sided - 1) * s > N - 1) {
    raise(ErrorCode::InsufficientResolution, "grid too short for the derivative stencil");
  }
  std::vector<double> out(values.size());
  std::vector<double> offsets;
  for (std::ptrdiff_t j = 0; j < N; ++j) {
    std::ptrdiff_t k_lo = -2;
    std::ptrdiff_t k_hi = 2;
    if (j + k_lo * s < 0 || j + k_hi * s > N - 1) {
      k_lo = std::max<std::ptrdiff_t>(-(j / s), -(one_sided - 1));
      k_hi = k_lo + one_sided - 1;
      if (j + k_hi * s > N - 1) {
        k_hi = (N - 1 - j) / s;
        k_lo = k_hi - one_sided + 1;
      }
    }
    offsets.clear();
    for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) {
      offsets.push_back(x[j + k * s] - x[j]);
    }
    const auto w = numerics::fd_weights(order, 0.0, offsets);
    double acc = 0.0;
    for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) {
      acc += w[k - k_lo] * values[j + k * s];
    }
    out[j] = acc;
  }
  return out;
}

ExpansionReport verify_expansion(const SheathProfile& profile, int max_order) {
  ExpansionReport report;
  const auto& p = profile.params;
  report.phi_b = p.phi_b;
  if (max_order < 0 || max_order > 3) {
    raise(ErrorCode::DomainError, "max_order must be in 0..3");
  }
  if (p.phi_b == 0.0) {
    return report;
  }
  if (profile.regime.kind != RegimeKind::Degenerate || p.phi_b < 0.0) {
    raise(ErrorCode::InvalidParams, "expansion check needs a degenerate profile with phi_b > 0");
  }
  const ExpansionConstants c = expansion_constants(p);
  const std::size_t N = profile.size();
  if (N < static_cast<std::size_t>(kExcludedCells) + 8) {
    raise(ErrorCode::InsufficientResolution, "profile has too few nodes");
  }
  const std::size_t last = N - 1 - kExcludedCells;
  std::vector<double> G(N);
  for (std::size_t j = 0; j < N; ++j) {
    G[j] = gauge(profile.x[j], p, profile.meta.classify_tol > 0.0 ? profile.meta.classify_tol
                                                                  : kClassifyTolerance);
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double h_max = [&] {
    double h = 0.0;
    for (std::size_t j = 1; j < N; ++j) {
      h = std::max(h, profile.x[j] - profile.x[j - 1]);
    }
    return h;
  }();

  for (const Observable u : kObservables) {
    const auto values = observable(profile, u);
    double u_max = 0.0;
    for (const double v : values) {
      u_max = std::max(u_max, std::abs(v));
    }
    for (int i = 0; i <= max_order; ++i) {
      const auto d = profile_derivative(profile.x, values, i);
      std::vector<double> coarse;
      if (i > 0) {
        coarse = profile_derivative(profile.x, values, i, 2);
      }
      const double richardson = i > 0 ? std::pow(2.0, accuracy_order(i)) - 1.0 : 1.0;
      // Magnitude of the stencil weights scales like h^{-i}.
      const double roundoff = eps * u_max * std::pow(2.0 / h_max, i) * 8.0;
      ExpansionRow row;
      row.U = u;
      row.order = i;
      for (std::size_t j = 0; j <= last; ++j) {
        const double gp = std::pow(G[j], i + 2);
        row.sup = std::max(row.sup, std::abs(d[j] * gp + c[i]));
        double floor = roundoff * gp;
        if (i > 0) {
          floor += std::abs(d[j] - coarse[j]) / richardson * gp;
        } else {
          floor += eps * std::abs(values[j]) * gp;
        }
        row.error_floor = std::max(row.error_floor, floor);
      }
      row.sup_over_phib = row.sup / p.phi_b;
      if (i >= 2 && row.error_floor > row.sup) {
        std::ostringstream msg;
        msg << "finite-difference error floor " << row.error_floor << " exceeds measured sup "
            << row.sup << " for " << to_string(u) << ", order " << i;
        raise(ErrorCode::InsufficientResolution, msg.str());
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

double lambda0_cubic(double lambda, double gamma) {
  return lambda * (lambda - 1.0) * (lambda - 2.0) - 12.0 * (2.0 * lambda / (gamma + 1.0) + 2.0);
}

double lambda0(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    raise(ErrorCode::InvalidParams, "lambda0 requires gamma > 1");
  }
  return solve_cubic(2.0 / (gamma + 1.0));
}

double root_5_5693() { return solve_cubic(1.0); }

}  // namespace sheath
