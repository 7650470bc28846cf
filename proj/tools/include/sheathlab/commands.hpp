#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sheath/diagnostics.hpp"
#include "sheathlab/config.hpp"
#include "sheathlab/io.hpp"

namespace sheathlab {

namespace fs = std::filesystem;

/// A file written by a command, tagged with the stage that produced it.
struct Artifact {
  fs::path path;
  std::string stage;
};
using Artifacts = std::vector<Artifact>;

/// {regime, margin, c_crit, Gamma, f_at_c}; Gamma is null off the degenerate line.
nlohmann::json run_classify(const RunConfig& config);

/// "phi,n,V" on count uniform points of [phi_lo, phi_hi].
Table sagdeev_table_csv(const RunConfig& config, double phi_lo, double phi_hi, std::size_t count);

/// <prefix>.csv, <prefix>.json (sidecar) and <prefix>.gp.
Artifacts run_stationary(const RunConfig& config, const fs::path& prefix);

/// Expansion residuals (degenerate profiles with phi_b > 0), tail fit and
/// pointwise residuals of a saved profile, as one JSON report.
Artifacts run_verify_asymptotics(const fs::path& profile_csv, int min_order, int max_order,
                                 const fs::path& report);

struct EvolveInputs {
  std::optional<fs::path> profile;  ///< solved from the config when absent
  std::optional<fs::path> restart;  ///< snapshot to continue from
};

/// series.csv (t, norm, energy), series.gp, the final snapshot and, when
/// snapshot_every > 0, numbered intermediate snapshots, all under dir.
Artifacts run_evolve(const RunConfig& config, const EvolveInputs& inputs, const fs::path& dir);

/// JSON report plus a per-sample CSV next to it.
Artifacts run_qcheck(const RunConfig& config, const fs::path& report);

struct FitRequest {
  std::string column = "norm";
  sheath::DecayModel model = sheath::DecayModel::Exponential;
  std::optional<double> t_lo;
  std::optional<double> t_hi;
  double beta = 1.0;
};

sheath::DecayFit fit_series(const fs::path& series_csv, const FitRequest& request);

/// Model "auto" picks algebraic for the degenerate regime.
FitRequest fit_request(const RunConfig& config);

inline constexpr const char* kStages[] = {"stationary", "verify-asymptotics", "evolve", "q-check",
                                          "decay-fit"};

/// Runs the requested stages in canonical order under dir and writes
/// manifest.json. Inputs of a stage that is not requested are taken from dir
/// and must carry the same config hash, otherwise DependencyMissing.
/// Stage failures are rethrown with the stage name prepended.
Artifacts run_pipeline(const RunConfig& config, const std::vector<std::string>& stages,
                       const fs::path& dir);

}  // namespace sheathlab
