#include "sheath/sagdeev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sheath/errors.hpp"
#include "sheath/numerics.hpp"

namespace sheath {

namespace {

constexpr std::size_t kSeriesTerms = 40;

void require_positive_density(double n) {
  if (!(n > 0.0)) {
    std::ostringstream msg;
    msg << "density must be positive (got n = " << n << ")";
    raise(ErrorCode::DomainError, msg.str());
  }
}

// Generalised binomial coefficients C(a, k) for k = 0..count-1.
std::vector<double> binomials(double a, std::size_t count) {
  std::vector<double> out(count, 0.0);
  out[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k) {
    out[k] = out[k - 1] * (a - static_cast<double>(k) + 1.0) / static_cast<double>(k);
  }
  return out;
}

}  // namespace

double f(double n, const PlasmaParams& params) {
  require_positive_density(n);
  const double g = params.gamma;
  return params.sound_energy() / (g - 1.0) * (std::pow(n, g - 1.0) - 1.0) +
         0.5 * params.mach_energy() * (1.0 / (n * n) - 1.0);
}

double f_prime(double n, const PlasmaParams& params) {
  require_positive_density(n);
  return (params.sound_energy() * std::pow(n, params.gamma + 1.0) - params.mach_energy()) /
         (n * n * n);
}

double f_offset(double delta, const PlasmaParams& params) {
  require_positive_density(1.0 + delta);
  const double g = params.gamma;
  const double log_n = std::log1p(delta);
  return params.sound_energy() / (g - 1.0) * std::expm1((g - 1.0) * log_n) +
         0.5 * params.mach_energy() * std::expm1(-2.0 * log_n);
}

BranchedInverse::BranchedInverse(const PlasmaParams& params, InverseOptions options)
    : params_(params), options_(options) {
  params_.validate();
  if (!(params_.mach_energy() > params_.sound_energy())) {
    raise(ErrorCode::InvalidParams,
          "the decreasing branch of f through n = 1 requires m u_inf^2 > gamma R T_inf");
  }
  c_crit_ = critical_density(params_);
  f_at_c_ = f(c_crit_, params_);
}

double BranchedInverse::offset(double phi) const {
  if (!std::isfinite(phi)) {
    raise(ErrorCode::DomainError, "potential must be finite");
  }
  if (phi == 0.0) {
    return 0.0;
  }
  const double delta_hi = c_crit_ - 1.0;
  if (phi <= f_at_c_) {
    if (phi < f_at_c_ - options_.tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "potential " << phi << " lies below the branch minimum f(c_crit) = " << f_at_c_;
      raise(ErrorCode::BranchExceeded, msg.str());
    }
    return delta_hi;
  }
  const double delta_lo = options_.n_floor - 1.0;
  if (phi > f_offset(delta_lo, params_)) {
    raise(ErrorCode::DomainError, "potential too large: root lies below the density floor");
  }
  const double slope0 = params_.sound_energy() - params_.mach_energy();
  const double guess = std::clamp(phi / slope0, delta_lo, delta_hi);
  const auto root = numerics::solve_bracketed(
      [&](double d) {
        return std::make_pair(f_offset(d, params_) - phi, f_prime(1.0 + d, params_));
      },
      guess, delta_lo, delta_hi);
  const double residual = std::abs(f_offset(root.x, params_) - phi);
  if (residual > options_.tol * std::max(1.0, std::abs(phi))) {
    std::ostringstream msg;
    msg << "f-residual " << residual << " above tolerance after bracketed Newton";
    raise(ErrorCode::ConvergenceFailure, msg.str());
  }
  return root.x;
}

double BranchedInverse::operator()(double phi) const { return 1.0 + offset(phi); }

double f_inverse(double phi, const PlasmaParams& params, const InverseOptions& options) {
  return BranchedInverse(params, options)(phi);
}

double sagdeev_V(double phi, const PlasmaParams& params, double quad_tol) {
  if (!(quad_tol > 0.0)) {
    raise(ErrorCode::DomainError, "quadrature tolerance must be positive");
  }
  const BranchedInverse inverse(params);
  if (phi == 0.0) {
    return 0.0;
  }
  if (phi < inverse.domain_lo()) {
    (void)inverse.offset(phi);  // raises BranchExceeded
  }
  // f^{-1}(eta) - e^{-eta} written as offset minus expm1 to keep the small-eta
  // cancellation exact.
  const auto integrand = [&](double eta) { return inverse.offset(eta) - std::expm1(-eta); };
  return numerics::integrate(integrand, 0.0, phi, quad_tol).value;
}

SagdeevSeries::SagdeevSeries(const PlasmaParams& params) : params_(params) {
  params_.validate();
  const double g = params_.gamma;
  const double mu2 = params_.mach_energy();
  const double grt = params_.sound_energy();
  const double rt = params_.R * params_.T_inf;
  const auto c_gm1 = binomials(g - 1.0, kSeriesTerms);
  const auto c_g = binomials(g, kSeriesTerms);

  // f(1 + d) = sum a_k d^k
  std::vector<double> a(kSeriesTerms, 0.0);
  for (std::size_t k = 1; k < kSeriesTerms; ++k) {
    const double c_m2 = (k % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(k + 1);
    a[k] = grt / (g - 1.0) * c_gm1[k] + 0.5 * mu2 * c_m2;
  }
  // exp(-f) = sum e_k d^k
  std::vector<double> e(kSeriesTerms, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k < kSeriesTerms; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      acc += static_cast<double>(j) * a[j] * e[k - j];
    }
    e[k] = -acc / static_cast<double>(k);
  }
  coeffs_.assign(kSeriesTerms, 0.0);
  for (std::size_t k = 2; k < kSeriesTerms; ++k) {
    coeffs_[k] = (k % 2 == 0 ? mu2 : -mu2) + rt * c_g[k] + e[k];
  }
  // The quadratic coefficient is (D^2 - D)/2 with D = m u^2 - gamma R T; it
  // vanishes identically in the marginal case, so set it from the factored form.
  const double D = mu2 - grt;
  coeffs_[2] = 0.5 * D * (D - 1.0);
}

double SagdeevSeries::potential(double delta) const {
  if (std::abs(delta) <= kSeriesRadius) {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 2;) {
      acc = acc * delta + coeffs_[k];
    }
    return acc * delta * delta;
  }
  const double n = 1.0 + delta;
  require_positive_density(n);
  const double log_n = std::log1p(delta);
  return -params_.mach_energy() * delta / n +
         params_.R * params_.T_inf * std::expm1(params_.gamma * log_n) +
         std::expm1(-f_offset(delta, params_));
}

double sagdeev_curvature(const PlasmaParams& params) {
  return 1.0 - 1.0 / (params.mach_energy() - params.sound_energy());
}

ExistenceReport existence_check(const PlasmaParams& params, double quad_tol,
                                double classify_tol) {
  const Regime regime = classify_regime(params, classify_tol);
  const DerivedConstants constants = derived_constants(params, classify_tol);
  ExistenceReport report;
  report.f_at_c = constants.f_at_c;
  if (params.phi_b == 0.0) {
    report.exists = true;
    report.V_at_phib = 0.0;
    return report;
  }
  if (regime.kind == RegimeKind::ForbiddenBand) {
    raise(ErrorCode::InvalidParams,
          "no stationary solution with phi_b != 0 when gamma R T/m < u_inf^2 < (gamma R T + 1)/m");
  }
  if (regime.kind == RegimeKind::Subsonic) {
    raise(ErrorCode::InvalidParams, "subsonic stationary profiles are not supported");
  }
  if (params.phi_b < constants.f_at_c) {
    report.exists = false;
    report.V_at_phib = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.V_at_phib = sagdeev_V(params.phi_b, params, quad_tol);
  report.exists = report.V_at_phib >= -quad_tol;
  return report;
}

std::vector<SagdeevRow> sagdeev_table(const PlasmaParams& params, double phi_lo, double phi_hi,
                                      std::size_t count, double quad_tol) {
  if (count < 2 || !(phi_lo < phi_hi)) {
    raise(ErrorCode::DomainError, "table needs at least two points on a non-empty interval");
  }
  const BranchedInverse inverse(params);
  std::vector<SagdeevRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const double phi = phi_lo + t * (phi_hi - phi_lo);
    rows.push_back({phi, inverse(phi), sagdeev_V(phi, params, quad_tol)});
  }
  return rows;
}

}  // namespace sheath
