#include "sheath/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sheath/asymptotics.hpp"
#include "sheath/errors.hpp"
#include "sheath/numerics.hpp"

namespace sheath {

namespace {

double uniform_spacing(std::span<const double> x) {
  if (x.size() < 3) {
    raise(ErrorCode::DomainError, "weighted norms need at least three nodes");
  }
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i] - x[i - 1] - h) > 1e-8 * h) {
      raise(ErrorCode::DomainError, "weighted norms need a uniform grid");
    }
  }
  return h;
}

double trapezoid(std::span<const double> g, double h) {
  double s = 0.5 * (g.front() + g.back());
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    s += g[i];
  }
  return s * h;
}

}  // namespace

std::vector<double> grid_derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  }
  return d;
}

double weighted_norm(std::span<const double> x, const std::vector<std::span<const double>>& fields,
                     const WeightSpec& weight, int order) {
  validate(weight);
  if (order < 0 || order > 2) {
    raise(ErrorCode::DomainError, "weighted_norm order must be 0, 1 or 2");
  }
  const double h = uniform_spacing(x);
  std::vector<double> acc(x.size(), 0.0);
  for (const auto& field : fields) {
    if (field.size() != x.size()) {
      raise(ErrorCode::DomainError, "field size does not match the grid");
    }
    std::vector<double> d(field.begin(), field.end());
    for (int j = 0; j <= order; ++j) {
      if (j > 0) {
        d = grid_derivative(d, h);
      }
      for (std::size_t i = 0; i < x.size(); ++i) {
        acc[i] += d[i] * d[i];
      }
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc[i] *= weight_at(weight, x[i]);
  }
  return std::sqrt(trapezoid(acc, h));
}

DecayFit decay_fit(std::span<const double> t, std::span<const double> norm, DecayModel model,
                   std::optional<std::pair<double, double>> window, double beta) {
  if (t.size() != norm.size() || t.empty()) {
    raise(ErrorCode::DegenerateFit, "time and norm series differ in length or are empty");
  }
  if (model == DecayModel::Algebraic && !(beta > 0.0)) {
    raise(ErrorCode::InvalidParams, "algebraic decay fit needs beta > 0");
  }
  const auto [lo, hi] = window.value_or(std::make_pair(0.5 * t.back(), t.back()));
  std::vector<double> xs;
  std::vector<double> ys;
  double first = 0.0;
  bool constant = true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) {
      continue;
    }
    if (!(norm[i] > 0.0) || !std::isfinite(norm[i])) {
      raise(ErrorCode::DegenerateFit, "norms in the fit window must be positive");
    }
    if (xs.empty()) {
      first = norm[i];
    } else if (std::abs(norm[i] - first) > 8.0 * std::numeric_limits<double>::epsilon() * first) {
      constant = false;
    }
    xs.push_back(model == DecayModel::Exponential ? t[i] : std::log1p(beta * t[i]));
    ys.push_back(std::log(norm[i]));
  }
  if (xs.size() < 10) {
    std::ostringstream msg;
    msg << "decay fit needs at least 10 samples in [" << lo << ", " << hi << "], got "
        << xs.size();
    raise(ErrorCode::DegenerateFit, msg.str());
  }
  if (constant) {
    raise(ErrorCode::DegenerateFit, "norm series is constant to round-off");
  }
  const auto line = numerics::fit_line(xs, ys);
  DecayFit fit;
  fit.model = model;
  fit.r_squared = line.r_squared;
  fit.t_lo = lo;
  fit.t_hi = hi;
  fit.samples = xs.size();
  if (model == DecayModel::Exponential) {
    fit.mu = -line.slope;
  } else {
    fit.exponent = line.slope;
    fit.beta = beta;
  }
  return fit;
}

double energy_functional(const PerturbationView& view, const WeightSpec& weight) {
  validate(weight);
  const auto& p = view.params;
  const double h = uniform_spacing(view.x);
  const auto px = grid_derivative(view.varphi, h);
  const auto sx = grid_derivative(view.psi, h);
  const auto zx = grid_derivative(view.zeta, h);
  const std::size_t n = view.x.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double nt = view.n_ref[i];
    const double T = view.T[i];
    const double ct = 0.5 * nt * p.R / ((p.gamma - 1.0) * T);
    const double E0 = 0.5 * nt * p.R * T * view.varphi[i] * view.varphi[i] +
                      0.5 * nt * p.m * view.psi[i] * view.psi[i] + ct * view.zeta[i] * view.zeta[i];
    const double E1 = 0.5 * nt * p.R * T * px[i] * px[i] + 0.5 * nt * p.m * sx[i] * sx[i] +
                      ct * zx[i] * zx[i];
    g[i] = weight_at(weight, view.x[i]) *
           (std::exp(-view.phi_ref[i]) * E0 + E1 + 0.5 * nt * nt * view.varphi[i] * view.varphi[i]);
  }
  return trapezoid(g, h);
}

QuadraticFormReport quadratic_form_check(const PlasmaParams& params, double epsilon, double beta,
                                         std::span<const double> x_samples, double classify_tol) {
  if (classify_regime(params, classify_tol).kind != RegimeKind::Degenerate) {
    raise(ErrorCode::InvalidParams, "quadratic form check requires the degenerate regime");
  }
  if (!(params.phi_b > 0.0)) {
    raise(ErrorCode::InvalidParams, "quadratic form check requires phi_b > 0");
  }
  if (!(epsilon > 0.0)) {
    raise(ErrorCode::InvalidParams, "epsilon must be positive");
  }
  const double Gamma = degenerate_decay_constant(params);
  const double beta_max = Gamma * std::sqrt(params.phi_b);
  if (!(beta > 0.0) || beta > beta_max) {
    std::ostringstream msg;
    msg << "beta must lie in (0, Gamma sqrt(phi_b)] = (0, " << beta_max << "]";
    raise(ErrorCode::InvalidParams, msg.str());
  }
  if (x_samples.empty()) {
    raise(ErrorCode::InvalidParams, "no x samples");
  }

  const double R = params.R;
  const double T = params.T_inf;
  const double g = params.gamma;
  const double e = epsilon;
  const double au = std::abs(params.u_inf);
  const double RT = R * T;
  const double x_shift = 1.0 / (Gamma * std::sqrt(params.phi_b));

  QuadraticFormReport report;
  report.epsilon = epsilon;
  report.beta = beta;
  report.lambda0 = lambda0(g);
  report.positive = true;
  report.discriminants = true;
  report.c = std::numeric_limits<double>::infinity();
  report.c_eigen = std::numeric_limits<double>::infinity();
  for (const double x : x_samples) {
    QuadraticSample s;
    s.x = x;
    s.B = x + 1.0 / beta;
    s.S = s.B / (x + x_shift);
    const double k = 1.0 / (s.B * s.B * Gamma * Gamma);
    const double S2 = s.S * s.S;
    const double S3 = S2 * s.S;
    s.q1 = 0.5 * e * RT +
           k * (0.5 * (1.0 - RT) * e * S2 + (g * RT - 1.0) * S3 -
                0.5 * Gamma * Gamma * e * (e - 1.0) * (e - 2.0));
    s.q2 = -RT * e + k * (2.0 * e * RT * S2 + 2.0 * (1.0 - g * RT) * S3);
    s.q3 = 0.5 * e * g * RT + k * (0.5 * (1.0 - g * RT) * e * S2 + (3.0 * g * RT + 1.0) * S3);
    s.q4 = e * R / (2.0 * (g - 1.0) * T) +
           k * (-e * R / (2.0 * (g - 1.0) * T) * S2 + g * R / ((g - 1.0) * T) * S3);
    s.q5 = -e * R + 2.0 * e * R * k * S2;
    s.disc12 = s.q2 * s.q2 - 4.0 * s.q1 * s.q3;
    s.disc35 = s.q5 * s.q5 - 4.0 * s.q3 * s.q4;
    s.cubic = s.q1 * s.q5 * s.q5 + s.q4 * s.q2 * s.q2 - 4.0 * s.q1 * s.q3 * s.q4;
    s.bound = -s.cubic * s.B * s.B;

    Eigen::Matrix3d M;
    M << au * s.q1, 0.5 * s.q2, 0.0,
         0.5 * s.q2, s.q3 / au, 0.5 * s.q5,
         0.0, 0.5 * s.q5, au * s.q4;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(M, Eigen::EigenvaluesOnly);
    s.min_eigen_scaled = eig.eigenvalues().minCoeff() * s.B * s.B;

    report.positive = report.positive && s.q1 > 0.0 && s.q3 > 0.0 && s.q4 > 0.0;
    report.discriminants = report.discriminants && s.disc12 < 0.0 && s.disc35 < 0.0;
    report.c = std::min(report.c, s.bound);
    report.c_eigen = std::min(report.c_eigen, s.min_eigen_scaled);
    report.samples.push_back(s);
  }
  report.cubic_bound = report.c > 0.0;
  report.pass = report.positive && report.discriminants && report.cubic_bound;
  return report;
}

}  // namespace sheath
