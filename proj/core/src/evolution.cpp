#include "sheath/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sheath/errors.hpp"
#include "sheath/numerics.hpp"

namespace sheath {

namespace {

// Forward (upwind for left-moving waves) first derivative.
void forward_derivative(std::span<const double> f, double h, std::vector<double>& out) {
  const std::size_t n = f.size();
  out.assign(n, 0.0);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    out[i] = (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) / (2.0 * h);
  }
  if (n >= 2) {
    out[n - 2] = (f[n - 1] - f[n - 2]) / h;
  }
}

void check_sizes(const EvolutionState& s) {
  const std::size_t n = s.grid.nodes();
  if (s.v.size() != n || s.u.size() != n || s.T.size() != n || s.phi.size() != n) {
    raise(ErrorCode::DomainError, "state fields do not match the grid");
  }
}

void check_positivity(const EvolutionState& s) {
  for (std::size_t i = 0; i < s.T.size(); ++i) {
    if (!(s.T[i] > 0.0) || !std::isfinite(s.v[i]) || !std::isfinite(s.u[i])) {
      std::ostringstream msg;
      msg << "temperature lost positivity at x = " << s.grid.x(i) << " (T = " << s.T[i]
          << ", t = " << s.t << ")";
      raise(ErrorCode::PositivityLoss, msg.str());
    }
  }
}

void check_characteristics(const EvolutionState& s) {
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const double l3 = characteristic_speeds(s.u[i], s.T[i], s.params).lambda3;
    if (l3 >= 0.0) {
      std::ostringstream msg;
      msg << "lambda3 = " << l3 << " >= 0 at x = " << s.grid.x(i)
          << "; the one-sided scheme needs all characteristics negative";
      raise(ErrorCode::CharacteristicSignViolation, msg.str());
    }
  }
}

void resolve_potential(EvolutionState& s, const std::vector<double>& guess,
                       const EvolutionOptions& options) {
  s.phi = poisson_solve(s.v, s.phi.front(), s.phi.back(), s.grid, guess, options.poisson);
}

}  // namespace

double GridSpec::x(std::size_t i) const noexcept {
  return i == N ? L : h() * static_cast<double>(i);
}

std::vector<double> GridSpec::coordinates() const {
  std::vector<double> out(nodes());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x(i);
  }
  return out;
}

void GridSpec::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) {
    raise(ErrorCode::DomainError, "grid length must be positive");
  }
  if (N < 16) {
    raise(ErrorCode::DomainError, "grid needs at least 16 cells");
  }
}

GridSpec grid_of(const SheathProfile& profile) {
  if (profile.size() < 17) {
    raise(ErrorCode::DomainError, "profile grid needs at least 16 cells");
  }
  GridSpec g{profile.length(), profile.size() - 1};
  const double h = g.h();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (std::abs(profile.x[i] - g.x(i)) > 1e-9 * h) {
      raise(ErrorCode::DomainError, "profile grid is not uniform");
    }
  }
  return g;
}

std::vector<double> poisson_residual(std::span<const double> v, std::span<const double> phi,
                                     double h) {
  const std::size_t n = phi.size();
  std::vector<double> r(n, 0.0);
  const double ih2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    r[i] = (phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) * ih2 - std::exp(v[i]) + std::exp(-phi[i]);
  }
  return r;
}

std::vector<double> poisson_jacobian_apply(std::span<const double> phi,
                                           std::span<const double> d, double h) {
  const std::size_t n = phi.size();
  std::vector<double> out(n, 0.0);
  const double ih2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (d[i - 1] + d[i + 1]) * ih2 + (-2.0 * ih2 - std::exp(-phi[i])) * d[i];
  }
  return out;
}

std::vector<double> poisson_solve(std::span<const double> v, double phi_b, double phi_L,
                                  const GridSpec& grid, std::span<const double> guess,
                                  const PoissonOptions& options) {
  const std::size_t n = grid.nodes();
  if (v.size() != n || guess.size() != n) {
    raise(ErrorCode::DomainError, "poisson_solve: field sizes do not match the grid");
  }
  if (!(options.tol > 0.0)) {
    raise(ErrorCode::DomainError, "poisson_solve: tol must be positive");
  }
  const double h = grid.h();
  const double ih2 = 1.0 / (h * h);
  std::vector<double> phi(guess.begin(), guess.end());
  phi.front() = phi_b;
  phi.back() = phi_L;

  const std::size_t m = n - 2;
  std::vector<double> lower(m, ih2);
  std::vector<double> upper(m, ih2);
  std::vector<double> diag(m);
  std::vector<double> rhs(m);
  double res = 0.0;
  for (std::size_t iter = 0; iter <= options.max_iter; ++iter) {
    const auto r = poisson_residual(v, phi, h);
    res = 0.0;
    for (const double x : r) {
      if (!std::isfinite(x)) {
        raise(ErrorCode::NewtonDivergence, "Poisson residual became non-finite");
      }
      res = std::max(res, std::abs(x));
    }
    if (res <= options.tol) {
      return phi;
    }
    if (iter == options.max_iter) {
      break;
    }
    for (std::size_t k = 0; k < m; ++k) {
      diag[k] = -2.0 * ih2 - std::exp(-phi[k + 1]);
      rhs[k] = -r[k + 1];
    }
    numerics::solve_tridiagonal(lower, diag, upper, rhs);
    for (std::size_t k = 0; k < m; ++k) {
      phi[k + 1] += rhs[k];
    }
  }
  std::ostringstream msg;
  msg << "Poisson Newton did not converge in " << options.max_iter
      << " iterations (residual " << res << ")";
  raise(ErrorCode::NewtonDivergence, msg.str());
}

TransportRates transport_rhs(const EvolutionState& state, const EvolutionOptions& options) {
  check_sizes(state);
  if (options.strict_upwind) {
    check_characteristics(state);
  }
  const auto& p = state.params;
  const double h = state.grid.h();
  std::vector<double> vx, ux, Tx, phix;
  forward_derivative(state.v, h, vx);
  forward_derivative(state.u, h, ux);
  forward_derivative(state.T, h, Tx);
  forward_derivative(state.phi, h, phix);
  const std::size_t n = state.grid.nodes();
  TransportRates r;
  r.dv.assign(n, 0.0);
  r.du.assign(n, 0.0);
  r.dT.assign(n, 0.0);
  const double rm = p.R / p.m;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u = state.u[i];
    const double T = state.T[i];
    r.dv[i] = -(u * vx[i] + ux[i]);
    r.du[i] = -(u * ux[i] + rm * (Tx[i] + T * vx[i])) + phix[i] / p.m;
    r.dT[i] = -(u * Tx[i] + (p.gamma - 1.0) * T * ux[i]);
  }
  return r;
}

double max_wave_speed(const EvolutionState& state) {
  const auto& p = state.params;
  double s = 0.0;
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    const double u = state.u[i];
    const double T = std::max(state.T[i], 0.0);
    // The fluid speeds u -+ sqrt(gamma R T / m) and the lambda formula agree
    // only for m = 1; bound by both.
    const double l1 = std::abs(characteristic_speeds(u, T > 0.0 ? T : 1e-300, p).lambda1);
    const double fluid = std::abs(u) + std::sqrt(p.gamma * p.R * T / p.m);
    s = std::max({s, l1, fluid});
  }
  return s;
}

double stable_dt(const EvolutionState& state, const EvolutionOptions& options) {
  const double s = max_wave_speed(state);
  if (!(s > 0.0)) {
    return options.cfl * state.grid.h();
  }
  return options.cfl * state.grid.h() / s;
}

EvolutionState step(const EvolutionState& state, double dt, const EvolutionOptions& options) {
  check_sizes(state);
  if (dt == 0.0) {
    return state;
  }
  const double limit = stable_dt(state, options);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the CFL limit " << limit;
    raise(ErrorCode::CFLViolation, msg.str());
  }
  const std::size_t n = state.grid.nodes();

  const auto k1 = transport_rhs(state, options);
  EvolutionState s1 = state;
  for (std::size_t i = 0; i < n; ++i) {
    s1.v[i] += dt * k1.dv[i];
    s1.u[i] += dt * k1.du[i];
    s1.T[i] += dt * k1.dT[i];
  }
  check_positivity(s1);
  resolve_potential(s1, state.phi, options);

  const auto k2 = transport_rhs(s1, options);
  EvolutionState out = state;
  for (std::size_t i = 0; i < n; ++i) {
    out.v[i] = 0.5 * (state.v[i] + s1.v[i] + dt * k2.dv[i]);
    out.u[i] = 0.5 * (state.u[i] + s1.u[i] + dt * k2.du[i]);
    out.T[i] = 0.5 * (state.T[i] + s1.T[i] + dt * k2.dT[i]);
  }
  out.t = state.t + dt;
  check_positivity(out);
  resolve_potential(out, s1.phi, options);
  return out;
}

DiagnosticsSeries evolve(const EvolutionState& initial, double t_end, double observer_period,
                         const std::vector<Observer>& observers,
                         const EvolutionOptions& options,
                         const std::function<void(const EvolutionState&)>& on_sample) {
  check_sizes(initial);
  if (!(t_end >= initial.t)) {
    raise(ErrorCode::DomainError, "t_end precedes the initial time");
  }
  if (!(observer_period > 0.0)) {
    raise(ErrorCode::DomainError, "observer period must be positive");
  }
  DiagnosticsSeries series;
  for (const auto& o : observers) {
    series.names.push_back(o.name);
  }
  const auto sample = [&](const EvolutionState& s) {
    series.t.push_back(s.t);
    std::vector<double> row;
    row.reserve(observers.size());
    for (const auto& o : observers) {
      row.push_back(o.fn(s));
    }
    series.values.push_back(std::move(row));
    if (on_sample) {
      on_sample(s);
    }
  };

  EvolutionState s = initial;
  sample(s);
  std::size_t k = 1;
  const double t0 = initial.t;
  while (s.t < t_end) {
    const double next = std::min(t0 + static_cast<double>(k) * observer_period, t_end);
    double dt = stable_dt(s, options);
    const bool lands = next - s.t <= dt * (1.0 + 1e-13);
    if (lands) {
      dt = next - s.t;
    }
    s = step(s, dt, options);
    if (lands) {
      s.t = next;
      sample(s);
      ++k;
    }
  }
  return series;
}

double bump(BumpShape shape, double x, double center, double width) {
  const double r = (x - center) / width;
  if (shape == BumpShape::Gaussian) {
    return std::exp(-r * r);
  }
  if (std::abs(r) >= 1.0) {
    return 0.0;
  }
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

EvolutionState state_from_profile(const SheathProfile& profile, const EvolutionOptions& options) {
  EvolutionState s;
  s.grid = grid_of(profile);
  s.params = profile.params;
  const std::size_t n = profile.size();
  s.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.v[i] = std::log(profile.n[i]);
  }
  s.u = profile.u;
  s.T = profile.T;
  s.phi = profile.phi;
  resolve_potential(s, profile.phi, options);
  return s;
}

EvolutionState perturb_state(const EvolutionState& base, const PerturbationSpec& spec,
                             const EvolutionOptions& options) {
  check_sizes(base);
  validate(spec.weight_compat);
  if (!(spec.width > 0.0)) {
    raise(ErrorCode::DomainError, "perturbation width must be positive");
  }
  const auto& p = base.params;
  EvolutionState s = base;
  double weighted = 0.0;
  for (std::size_t i = 0; i + 1 < s.grid.nodes(); ++i) {
    const double x = s.grid.x(i);
    const double b = spec.amplitude * bump(spec.shape, x, spec.center, spec.width);
    if (spec.in_v) {
      s.v[i] += b;
    }
    if (spec.in_u) {
      s.u[i] += b * std::abs(p.u_inf);
    }
    if (spec.in_T) {
      s.T[i] += b * p.T_inf;
    }
    weighted += weight_at(spec.weight_compat, x) * b * b;
  }
  if (!std::isfinite(weighted)) {
    raise(ErrorCode::DomainError, "perturbation is not finite in the requested weighted norm");
  }
  check_positivity(s);
  check_characteristics(s);
  resolve_potential(s, base.phi, options);
  return s;
}

EvolutionState make_initial_perturbation(const SheathProfile& profile,
                                         const PerturbationSpec& spec,
                                         const EvolutionOptions& options) {
  EvolutionState base;
  base.grid = grid_of(profile);
  base.params = profile.params;
  base.v.resize(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    base.v[i] = std::log(profile.n[i]);
  }
  base.u = profile.u;
  base.T = profile.T;
  base.phi = profile.phi;
  return perturb_state(base, spec, options);
}

PerturbationView perturbation(const EvolutionState& state, const EvolutionState& reference) {
  check_sizes(state);
  check_sizes(reference);
  if (state.grid.N != reference.grid.N || state.grid.L != reference.grid.L) {
    raise(ErrorCode::DomainError, "perturbation needs state and reference on the same grid");
  }
  const std::size_t n = state.grid.nodes();
  PerturbationView pv;
  pv.x = state.grid.coordinates();
  pv.params = state.params;
  pv.varphi.resize(n);
  pv.psi.resize(n);
  pv.zeta.resize(n);
  pv.sigma.resize(n);
  pv.n_ref.resize(n);
  pv.phi_ref = reference.phi;
  pv.T = state.T;
  for (std::size_t i = 0; i < n; ++i) {
    pv.varphi[i] = state.v[i] - reference.v[i];
    pv.psi[i] = state.u[i] - reference.u[i];
    pv.zeta[i] = state.T[i] - reference.T[i];
    pv.sigma[i] = state.phi[i] - reference.phi[i];
    pv.n_ref[i] = std::exp(reference.v[i]);
  }
  return pv;
}

EvolutionState discrete_equilibrium(const EvolutionState& start, double tol, double t_max,
                                    const EvolutionOptions& options) {
  EvolutionState s = start;
  const double t0 = start.t;
  double change = 0.0;
  while (s.t - t0 < t_max) {
    const EvolutionState before = s;
    const double t_mark = s.t + 1.0;
    while (s.t < t_mark) {
      s = step(s, std::min(stable_dt(s, options), t_mark - s.t), options);
    }
    change = 0.0;
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      change = std::max({change, std::abs(s.v[i] - before.v[i]), std::abs(s.u[i] - before.u[i]),
                         std::abs(s.T[i] - before.T[i])});
    }
    if (change <= tol) {
      s.t = start.t;
      return s;
    }
  }
  std::ostringstream msg;
  msg << "discrete equilibrium not reached by t = " << t_max << " (last change per unit time "
      << change << ")";
  raise(ErrorCode::ConvergenceFailure, msg.str());
}

}  // namespace sheath
