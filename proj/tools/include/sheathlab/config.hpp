#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "sheath/evolution.hpp"
#include "sheath/params.hpp"
#include "sheath/stationary.hpp"
#include "sheath/weights.hpp"

namespace sheathlab {

struct StationaryConfig {
  std::optional<double> length;
  double max_length = 1.0e4;
  std::size_t cells = 0;
  double tail_eps = 1e-6;
  double quad_tol = sheath::kDefaultQuadTol;
  double classify_tol = sheath::kClassifyTolerance;
};

enum class ReferenceKind { Auto, Profile, Relaxed };

struct EvolveConfig {
  double t_end = 50.0;
  double observer_period = 0.5;
  double snapshot_every = 0.0;  ///< 0 writes only the final snapshot
  double cfl = 0.4;
  bool strict_upwind = true;
  double poisson_tol = 1e-10;
  std::size_t poisson_max_iter = 50;
  ReferenceKind reference = ReferenceKind::Auto;
};

struct WeightConfig {
  std::string kind = "auto";    ///< auto | algebraic | exponential
  double alpha = 4.0;
  std::optional<double> beta;   ///< auto: 0.9 Gamma sqrt(phi_b) or c_pred / 2
};

struct QCheckConfig {
  double epsilon = 4.0;
  std::optional<double> beta;   ///< default 0.9 Gamma sqrt(phi_b)
  double x_max = 100.0;
  std::size_t samples = 1000;
};

struct FitConfig {
  std::string model = "auto";   ///< auto | exp | alg
  std::optional<double> t_lo;
  std::optional<double> t_hi;
};

/// Everything a run needs; the far-field density is fixed at 1.
struct RunConfig {
  sheath::PlasmaParams params;
  StationaryConfig stationary;
  EvolveConfig evolve;
  sheath::PerturbationSpec perturbation;
  std::optional<double> perturbation_center;  ///< default L / 4
  WeightConfig weight;
  QCheckConfig qcheck;
  FitConfig fit;
};

/// Parses an INI file. Throws sheath::Error(ConfigError) naming the offending
/// key for missing or malformed entries, and InvalidParams for parameters
/// that parse but violate their invariants.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

/// Canonical serialisation (sorted keys, resolved values).
nlohmann::json to_json(const RunConfig& config);

/// FNV-1a 64 of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Resolved helpers shared by the commands.
sheath::GridRequest grid_request(const RunConfig& config);
sheath::StationaryOptions stationary_options(const RunConfig& config);
sheath::EvolutionOptions evolution_options(const RunConfig& config);
sheath::WeightSpec resolve_weight(const RunConfig& config);
bool use_relaxed_reference(const RunConfig& config);

}  // namespace sheathlab
