#include "sheath/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sheath/errors.hpp"
#include "sheath/numerics.hpp"

namespace sheath {

namespace {

// Cell integrals are carried out in y = log|n - 1|, where the integrand
// |f'(n)| |n - 1| / sqrt(2 V) tends to a constant (non-degenerate) or to a
// pure exponential (degenerate) along the tail.
class DensityMarcher {
 public:
  DensityMarcher(const PlasmaParams& params, double delta_b)
      : params_(params), series_(params), sign_(delta_b > 0.0 ? 1.0 : -1.0) {}

  double delta(double y) const { return sign_ * std::exp(y); }

  double weight(double y) const {
    const double d = delta(y);
    const double V = series_.potential(d);
    return std::abs(f_prime(1.0 + d, params_)) * std::abs(d) / std::sqrt(2.0 * V);
  }

  double cell_length(double y_lo, double y_hi) const {
    return numerics::integrate([this](double y) { return weight(y); }, y_lo, y_hi, 0.0, 1e-14)
        .value;
  }

  // Next log-offset after advancing a distance h from y_from.
  double advance(double y_from, double h) const {
    const double w0 = weight(y_from);
    double step = h / w0;
    double y_lo = y_from - 2.0 * step;
    for (int k = 0; cell_length(y_lo, y_from) < h; ++k) {
      if (k > 200) {
        raise(ErrorCode::ConvergenceFailure, "could not bracket the next stationary node");
      }
      step *= 2.0;
      y_lo = y_from - 2.0 * step;
    }
    const auto root = numerics::solve_bracketed(
        [&](double y) { return std::make_pair(cell_length(y, y_from) - h, -weight(y)); },
        y_from - h / w0, y_lo, y_from);
    return root.x;
  }

  const SagdeevSeries& series() const { return series_; }

 private:
  PlasmaParams params_;
  SagdeevSeries series_;
  double sign_;
};

void fill_from_offsets(SheathProfile& profile, const std::vector<double>& delta) {
  const auto& p = profile.params;
  const std::size_t N = delta.size();
  profile.n.resize(N);
  profile.u.resize(N);
  profile.T.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double n = 1.0 + delta[i];
    profile.n[i] = n;
    profile.u[i] = p.u_inf / n;
    profile.T[i] = p.T_inf * std::exp((p.gamma - 1.0) * std::log1p(delta[i]));
  }
}

void check_grid(std::span<const double> x) {
  if (x.size() < 2) {
    raise(ErrorCode::DomainError, "stationary grid needs at least two nodes");
  }
  if (x[0] != 0.0) {
    raise(ErrorCode::DomainError, "stationary grid must start at the wall x = 0");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      raise(ErrorCode::DomainError, "stationary grid must be strictly increasing");
    }
  }
}

}  // namespace

double default_domain_length(const PlasmaParams& params, const Regime& regime) {
  if (regime.kind == RegimeKind::Degenerate) {
    if (!(params.phi_b > 0.0)) {
      return 40.0;
    }
    return 40.0 / (degenerate_decay_constant(params) * std::sqrt(params.phi_b));
  }
  if (regime.kind == RegimeKind::Nondegenerate) {
    return 20.0 / std::sqrt(sagdeev_curvature(params));
  }
  raise(ErrorCode::InvalidParams, "no default sheath length outside the Bohm regimes");
}

SheathProfile solve_stationary(const PlasmaParams& params, const GridRequest& grid,
                               const StationaryOptions& options) {
  const Regime regime = classify_regime(params, options.classify_tol);
  double length = 0.0;
  double scale = 1.0;
  if (regime.kind == RegimeKind::Degenerate && params.phi_b > 0.0) {
    scale = 1.0 / (degenerate_decay_constant(params) * std::sqrt(params.phi_b));
  } else if (regime.kind == RegimeKind::Nondegenerate) {
    scale = 1.0 / std::sqrt(sagdeev_curvature(params));
  }
  if (grid.length) {
    length = *grid.length;
  } else {
    length = std::min(default_domain_length(params, regime), grid.max_length);
  }
  if (!(length > 0.0)) {
    raise(ErrorCode::DomainError, "domain length must be positive");
  }
  std::size_t cells = grid.cells;
  if (cells == 0) {
    cells = static_cast<std::size_t>(std::ceil(40.0 * length / scale));
  }
  std::vector<double> x(cells + 1);
  const double h = length / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) {
    x[i] = h * static_cast<double>(i);
  }
  x.back() = length;
  return solve_stationary_on(params, x, options);
}

SheathProfile solve_stationary_on(const PlasmaParams& params, std::span<const double> x,
                                  const StationaryOptions& options) {
  check_grid(x);
  SheathProfile profile;
  profile.params = params;
  profile.regime = classify_regime(params, options.classify_tol);
  profile.x.assign(x.begin(), x.end());
  profile.meta.tail_eps = options.tail_eps;
  profile.meta.quad_tol = options.quad_tol;
  profile.meta.classify_tol = options.classify_tol;
  const std::size_t N = x.size();

  if (params.phi_b == 0.0) {
    profile.phi.assign(N, 0.0);
    fill_from_offsets(profile, std::vector<double>(N, 0.0));
    return profile;
  }

  const ExistenceReport existence = existence_check(params, options.quad_tol, options.classify_tol);
  if (!existence.exists) {
    std::ostringstream msg;
    msg << "no monotone stationary profile: V(phi_b) = " << existence.V_at_phib
        << ", f(c_crit) = " << existence.f_at_c;
    raise(ErrorCode::ExistenceViolation, msg.str());
  }
  const bool degenerate = profile.regime.kind == RegimeKind::Degenerate;
  const double rate = degenerate ? 0.0 : std::sqrt(sagdeev_curvature(params));
  const double Gamma = degenerate_decay_constant(params);
  profile.meta.tail_rate = rate;

  const BranchedInverse inverse(params);
  const double delta_b = inverse.offset(params.phi_b);
  const DensityMarcher marcher(params, delta_b);

  // V must stay positive strictly between the wall value and the far field.
  const std::size_t K = std::max<std::size_t>(options.singularity_samples, 16);
  const double y_b = std::log(std::abs(delta_b));
  const double y_tail = y_b + std::log(options.tail_eps);
  for (std::size_t k = 0; k < K; ++k) {
    const double lin = delta_b * (1.0 - static_cast<double>(k) / static_cast<double>(K));
    const double geo = marcher.delta(y_b + (y_tail - y_b) * static_cast<double>(k) /
                                               static_cast<double>(K - 1));
    for (const double d : {lin, geo}) {
      if (!(marcher.series().potential(d) > 0.0)) {
        std::ostringstream msg;
        msg << "Sagdeev potential vanishes at interior density offset " << d;
        raise(ErrorCode::QuadratureSingularity, msg.str());
      }
    }
  }

  std::vector<double> delta(N);
  profile.phi.resize(N);
  delta[0] = delta_b;
  profile.phi[0] = params.phi_b;
  const double phi_cut = options.tail_eps * std::abs(params.phi_b);
  double y = y_b;
  std::size_t i = 1;
  for (; i < N; ++i) {
    if (std::abs(profile.phi[i - 1]) < phi_cut) {
      break;
    }
    y = marcher.advance(y, x[i] - x[i - 1]);
    delta[i] = marcher.delta(y);
    profile.phi[i] = f_offset(delta[i], params);
  }
  if (i < N) {
    const double x_cut = x[i - 1];
    const double phi_c = profile.phi[i - 1];
    profile.meta.x_cut = x_cut;
    for (; i < N; ++i) {
      const double s = x[i] - x_cut;
      if (degenerate) {
        const double g = Gamma * s + 1.0 / std::sqrt(phi_c);
        profile.phi[i] = 1.0 / (g * g);
      } else {
        profile.phi[i] = phi_c * std::exp(-rate * s);
      }
      delta[i] = inverse.offset(profile.phi[i]);
    }
  }
  fill_from_offsets(profile, delta);
  return profile;
}

SheathProfile resample(const SheathProfile& profile, std::span<const double> x) {
  check_grid(x);
  SheathProfile out;
  out.params = profile.params;
  out.regime = profile.regime;
  out.meta = profile.meta;
  out.x.assign(x.begin(), x.end());
  const std::size_t N = x.size();
  out.phi.resize(N);
  std::vector<double> delta(N, 0.0);
  if (profile.params.phi_b == 0.0) {
    std::fill(out.phi.begin(), out.phi.end(), 0.0);
  } else {
    const numerics::MonotoneCubic interp(profile.x, profile.phi);
    const BranchedInverse inverse(profile.params);
    for (std::size_t i = 0; i < N; ++i) {
      // Beyond the stored table the far field is approached along the tail.
      out.phi[i] = x[i] <= profile.length() ? interp(x[i]) : profile.phi.back();
      delta[i] = inverse.offset(out.phi[i]);
    }
  }
  fill_from_offsets(out, delta);
  return out;
}

ResidualReport residual_check(const SheathProfile& profile) {
  const auto& p = profile.params;
  ResidualReport r;
  const std::size_t N = profile.size();
  for (std::size_t i = 0; i < N; ++i) {
    const double d = profile.n[i] - 1.0;
    r.mass_flux = std::max(r.mass_flux, std::abs(profile.n[i] * profile.u[i] - p.u_inf));
    r.momentum = std::max(r.momentum, std::abs(f_offset(d, p) - profile.phi[i]));
    r.entropy = std::max(
        r.entropy, std::abs(profile.T[i] - p.T_inf * std::pow(profile.n[i], p.gamma - 1.0)));
  }
  for (std::size_t i = 1; i + 1 < N; ++i) {
    const double hm = profile.x[i] - profile.x[i - 1];
    const double hp = profile.x[i + 1] - profile.x[i];
    const double phi_xx = 2.0 *
                          ((profile.phi[i + 1] - profile.phi[i]) / hp -
                           (profile.phi[i] - profile.phi[i - 1]) / hm) /
                          (hp + hm);
    const double source = (profile.n[i] - 1.0) - std::expm1(-profile.phi[i]);
    r.poisson = std::max(r.poisson, std::abs(phi_xx - source));
  }
  return r;
}

TailReport tail_decay_fit(const SheathProfile& profile, const Regime& regime) {
  const auto& p = profile.params;
  const std::size_t N = profile.size();
  if (p.phi_b == 0.0 || N < 6) {
    raise(ErrorCode::InsufficientTail, "trivial or too short profile has no tail to fit");
  }
  const double x_start = profile.length() * (2.0 / 3.0);
  std::vector<double> xs;
  std::vector<double> logs;
  for (std::size_t i = 0; i < N; ++i) {
    if (profile.x[i] < x_start) {
      continue;
    }
    const double a = std::abs(profile.phi[i]);
    if (!(a < 0.1 * std::abs(p.phi_b))) {
      raise(ErrorCode::InsufficientTail,
            "profile has not decayed below 0.1 |phi_b| over the last third of the grid");
    }
    if (a > 0.0 && std::isfinite(std::log(a))) {
      xs.push_back(profile.x[i]);
      logs.push_back(std::log(a));
    }
  }
  if (xs.size() < 3) {
    raise(ErrorCode::InsufficientTail, "fewer than three usable tail samples");
  }
  TailReport report;
  report.x_lo = xs.front();
  report.x_hi = xs.back();
  if (regime.kind == RegimeKind::Degenerate) {
    const double Gamma = degenerate_decay_constant(p);
    std::vector<double> log_g(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      log_g[k] = std::log(Gamma * xs[k] + 1.0 / std::sqrt(p.phi_b));
    }
    const auto fit = numerics::fit_line(log_g, logs);
    report.model = TailModel::Algebraic;
    report.fitted = fit.slope;
    report.predicted = -2.0;
    report.r_squared = fit.r_squared;
  } else {
    const auto fit = numerics::fit_line(xs, logs);
    report.model = TailModel::Exponential;
    report.fitted = -fit.slope;
    report.predicted = std::sqrt(sagdeev_curvature(p));
    report.r_squared = fit.r_squared;
  }
  return report;
}

}  // namespace sheath
