#include "sheathlab/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "sheath/errors.hpp"
#include "sheath/sagdeev.hpp"

namespace sheathlab {

namespace pt = boost::property_tree;
using sheath::ErrorCode;
using sheath::raise;

namespace {

const std::set<std::string> kKnownSections = {"stationary", "evolve", "perturbation",
                                              "weight", "qcheck", "fit"};
const std::set<std::string> kKnownKeys = {"m", "R", "gamma", "T_inf", "u_inf", "phi_b"};
const std::map<std::string, std::set<std::string>> kSectionKeys = {
    {"stationary", {"length", "max_length", "cells", "tail_eps", "quad_tol", "classify_tol"}},
    {"evolve",
     {"t_end", "observer_period", "snapshot_every", "cfl", "strict_upwind", "poisson_tol",
      "poisson_max_iter", "reference"}},
    {"perturbation", {"shape", "amplitude", "center", "width", "v", "u", "T"}},
    {"weight", {"kind", "alpha", "beta"}},
    {"qcheck", {"epsilon", "beta", "x_max", "samples"}},
    {"fit", {"model", "t_lo", "t_hi"}}};

double number(const pt::ptree& tree, const std::string& key) {
  const auto node = tree.get_optional<std::string>(pt::ptree::path_type(key, '/'));
  if (!node) {
    raise(ErrorCode::ConfigError, "missing required key '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(*node, &used);
    if (used != node->size() || !std::isfinite(v)) {
      throw std::invalid_argument(key);
    }
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::ConfigError, "key '" + key + "' is not a finite number: '" + *node + "'");
  }
}

std::optional<double> maybe_number(const pt::ptree& tree, const std::string& key) {
  if (!tree.get_child_optional(pt::ptree::path_type(key, '/'))) {
    return std::nullopt;
  }
  return number(tree, key);
}

void assign(const pt::ptree& tree, const std::string& key, double& out) {
  if (auto v = maybe_number(tree, key)) {
    out = *v;
  }
}

void assign(const pt::ptree& tree, const std::string& key, std::size_t& out) {
  if (auto v = maybe_number(tree, key)) {
    if (*v < 0.0 || std::floor(*v) != *v) {
      raise(ErrorCode::ConfigError, "key '" + key + "' must be a non-negative integer");
    }
    out = static_cast<std::size_t>(*v);
  }
}

std::string text(const pt::ptree& tree, const std::string& key, const std::string& fallback) {
  return tree.get<std::string>(pt::ptree::path_type(key, '/'), fallback);
}

bool flag(const pt::ptree& tree, const std::string& key, bool fallback) {
  const auto s = text(tree, key, fallback ? "true" : "false");
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    return false;
  }
  raise(ErrorCode::ConfigError, "key '" + key + "' is not a boolean: '" + s + "'");
}

void require_positive(double v, const std::string& key) {
  if (!(v > 0.0)) {
    raise(ErrorCode::ConfigError, "key '" + key + "' must be positive");
  }
}

RunConfig from_tree(const pt::ptree& tree) {
  for (const auto& [name, child] : tree) {
    if (!child.empty() && !kKnownSections.count(name)) {
      raise(ErrorCode::ConfigError, "unknown section [" + name + "]");
    }
    if (child.empty() && !kKnownKeys.count(name) && !kKnownSections.count(name)) {
      raise(ErrorCode::ConfigError, "unknown key '" + name + "'");
    }
    if (const auto it = kSectionKeys.find(name); it != kSectionKeys.end()) {
      for (const auto& [key, value] : child) {
        if (!it->second.count(key)) {
          raise(ErrorCode::ConfigError, "unknown key '" + name + "/" + key + "'");
        }
      }
    }
  }
  RunConfig c;
  auto& p = c.params;
  p.m = number(tree, "m");
  p.R = number(tree, "R");
  p.gamma = number(tree, "gamma");
  p.T_inf = number(tree, "T_inf");
  p.u_inf = number(tree, "u_inf");
  p.phi_b = number(tree, "phi_b");

  auto& s = c.stationary;
  s.length = maybe_number(tree, "stationary/length");
  assign(tree, "stationary/max_length", s.max_length);
  assign(tree, "stationary/cells", s.cells);
  assign(tree, "stationary/tail_eps", s.tail_eps);
  assign(tree, "stationary/quad_tol", s.quad_tol);
  assign(tree, "stationary/classify_tol", s.classify_tol);
  require_positive(s.max_length, "stationary/max_length");
  require_positive(s.tail_eps, "stationary/tail_eps");
  require_positive(s.quad_tol, "stationary/quad_tol");
  if (s.classify_tol < 0.0) {
    raise(ErrorCode::ConfigError, "key 'stationary/classify_tol' must be non-negative");
  }

  auto& e = c.evolve;
  assign(tree, "evolve/t_end", e.t_end);
  assign(tree, "evolve/observer_period", e.observer_period);
  assign(tree, "evolve/snapshot_every", e.snapshot_every);
  assign(tree, "evolve/cfl", e.cfl);
  assign(tree, "evolve/poisson_tol", e.poisson_tol);
  assign(tree, "evolve/poisson_max_iter", e.poisson_max_iter);
  e.strict_upwind = flag(tree, "evolve/strict_upwind", true);
  const auto ref = text(tree, "evolve/reference", "auto");
  if (ref == "auto") {
    e.reference = ReferenceKind::Auto;
  } else if (ref == "profile") {
    e.reference = ReferenceKind::Profile;
  } else if (ref == "relaxed") {
    e.reference = ReferenceKind::Relaxed;
  } else {
    raise(ErrorCode::ConfigError, "evolve/reference must be auto, profile or relaxed");
  }
  if (e.t_end < 0.0) {
    raise(ErrorCode::ConfigError, "key 'evolve/t_end' must be non-negative");
  }
  require_positive(e.observer_period, "evolve/observer_period");
  require_positive(e.cfl, "evolve/cfl");
  require_positive(e.poisson_tol, "evolve/poisson_tol");
  if (e.snapshot_every < 0.0) {
    raise(ErrorCode::ConfigError, "key 'evolve/snapshot_every' must be non-negative");
  }

  auto& ps = c.perturbation;
  const auto shape = text(tree, "perturbation/shape", "gaussian");
  if (shape == "gaussian") {
    ps.shape = sheath::BumpShape::Gaussian;
  } else if (shape == "compact-bump") {
    ps.shape = sheath::BumpShape::CompactBump;
  } else {
    raise(ErrorCode::ConfigError, "perturbation/shape must be gaussian or compact-bump");
  }
  assign(tree, "perturbation/amplitude", ps.amplitude);
  assign(tree, "perturbation/width", ps.width);
  c.perturbation_center = maybe_number(tree, "perturbation/center");
  ps.in_v = flag(tree, "perturbation/v", false);
  ps.in_u = flag(tree, "perturbation/u", true);
  ps.in_T = flag(tree, "perturbation/T", false);
  require_positive(ps.width, "perturbation/width");

  auto& w = c.weight;
  w.kind = text(tree, "weight/kind", "auto");
  if (w.kind != "auto" && w.kind != "algebraic" && w.kind != "exponential") {
    raise(ErrorCode::ConfigError, "weight/kind must be auto, algebraic or exponential");
  }
  assign(tree, "weight/alpha", w.alpha);
  w.beta = maybe_number(tree, "weight/beta");
  if (w.beta) {
    require_positive(*w.beta, "weight/beta");
  }

  auto& q = c.qcheck;
  assign(tree, "qcheck/epsilon", q.epsilon);
  q.beta = maybe_number(tree, "qcheck/beta");
  assign(tree, "qcheck/x_max", q.x_max);
  assign(tree, "qcheck/samples", q.samples);
  require_positive(q.x_max, "qcheck/x_max");
  if (q.samples < 2) {
    raise(ErrorCode::ConfigError, "key 'qcheck/samples' must be at least 2");
  }

  auto& f = c.fit;
  f.model = text(tree, "fit/model", "auto");
  if (f.model != "auto" && f.model != "exp" && f.model != "alg") {
    raise(ErrorCode::ConfigError, "fit/model must be auto, exp or alg");
  }
  f.t_lo = maybe_number(tree, "fit/t_lo");
  f.t_hi = maybe_number(tree, "fit/t_hi");

  c.params.validate();
  return c;
}

pt::ptree read_ini(std::istream& in, const std::string& origin) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& err) {
    raise(ErrorCode::ConfigError, origin + ": " + err.message() + " (line " +
                                      std::to_string(err.line()) + ")");
  }
  return tree;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::ConfigError, "cannot open config file " + path.string());
  }
  return from_tree(read_ini(in, path.string()));
}

RunConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return from_tree(read_ini(in, "<config>"));
}

nlohmann::json to_json(const RunConfig& c) {
  using nlohmann::json;
  const auto& p = c.params;
  json j;
  j["params"] = {{"m", p.m},       {"R", p.R},         {"gamma", p.gamma},
                 {"T_inf", p.T_inf}, {"u_inf", p.u_inf}, {"phi_b", p.phi_b},
                 {"n_inf", sheath::PlasmaParams::n_inf}};
  const auto& s = c.stationary;
  j["stationary"] = {{"length", optional_json(s.length)}, {"max_length", s.max_length},
                     {"cells", s.cells},                  {"tail_eps", s.tail_eps},
                     {"quad_tol", s.quad_tol},            {"classify_tol", s.classify_tol}};
  const auto& e = c.evolve;
  const char* ref = e.reference == ReferenceKind::Auto      ? "auto"
                    : e.reference == ReferenceKind::Profile ? "profile"
                                                            : "relaxed";
  j["evolve"] = {{"t_end", e.t_end},
                 {"observer_period", e.observer_period},
                 {"snapshot_every", e.snapshot_every},
                 {"cfl", e.cfl},
                 {"strict_upwind", e.strict_upwind},
                 {"poisson_tol", e.poisson_tol},
                 {"poisson_max_iter", e.poisson_max_iter},
                 {"reference", ref}};
  const auto& ps = c.perturbation;
  j["perturbation"] = {
      {"shape", ps.shape == sheath::BumpShape::Gaussian ? "gaussian" : "compact-bump"},
      {"amplitude", ps.amplitude},
      {"center", optional_json(c.perturbation_center)},
      {"width", ps.width},
      {"v", ps.in_v},
      {"u", ps.in_u},
      {"T", ps.in_T}};
  j["weight"] = {{"kind", c.weight.kind}, {"alpha", c.weight.alpha},
                 {"beta", optional_json(c.weight.beta)}};
  j["qcheck"] = {{"epsilon", c.qcheck.epsilon}, {"beta", optional_json(c.qcheck.beta)},
                 {"x_max", c.qcheck.x_max},     {"samples", c.qcheck.samples}};
  j["fit"] = {{"model", c.fit.model}, {"t_lo", optional_json(c.fit.t_lo)},
              {"t_hi", optional_json(c.fit.t_hi)}};
  return j;
}

std::string config_hash(const RunConfig& config) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  const std::string canonical = to_json(config).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

sheath::GridRequest grid_request(const RunConfig& config) {
  sheath::GridRequest g;
  g.length = config.stationary.length;
  g.max_length = config.stationary.max_length;
  g.cells = config.stationary.cells;
  return g;
}

sheath::StationaryOptions stationary_options(const RunConfig& config) {
  sheath::StationaryOptions o;
  o.tail_eps = config.stationary.tail_eps;
  o.quad_tol = config.stationary.quad_tol;
  o.classify_tol = config.stationary.classify_tol;
  return o;
}

sheath::EvolutionOptions evolution_options(const RunConfig& config) {
  sheath::EvolutionOptions o;
  o.cfl = config.evolve.cfl;
  o.strict_upwind = config.evolve.strict_upwind;
  o.poisson.tol = config.evolve.poisson_tol;
  o.poisson.max_iter = config.evolve.poisson_max_iter;
  return o;
}

sheath::WeightSpec resolve_weight(const RunConfig& config) {
  const auto& p = config.params;
  const auto regime = sheath::classify_regime(p, config.stationary.classify_tol);
  const bool degenerate = regime.kind == sheath::RegimeKind::Degenerate;
  std::string kind = config.weight.kind;
  if (kind == "auto") {
    kind = degenerate ? "algebraic" : "exponential";
  }
  double beta = 0.0;
  if (config.weight.beta) {
    beta = *config.weight.beta;
  } else if (degenerate && p.phi_b > 0.0) {
    beta = 0.9 * sheath::degenerate_decay_constant(p) * std::sqrt(p.phi_b);
  } else if (regime.kind == sheath::RegimeKind::Nondegenerate) {
    beta = 0.5 * std::sqrt(sheath::sagdeev_curvature(p));
  } else {
    beta = 0.1;
  }
  if (kind == "algebraic") {
    return sheath::AlgebraicWeight{config.weight.alpha, beta};
  }
  return sheath::ExponentialWeight{beta};
}

bool use_relaxed_reference(const RunConfig& config) {
  switch (config.evolve.reference) {
    case ReferenceKind::Profile: return false;
    case ReferenceKind::Relaxed: return true;
    case ReferenceKind::Auto: break;
  }
  // The degenerate relaxation is itself algebraic and does not settle in
  // reasonable time; the continuous profile is close enough there.
  return sheath::classify_regime(config.params, config.stationary.classify_tol).kind ==
         sheath::RegimeKind::Nondegenerate;
}

}  // namespace sheathlab
