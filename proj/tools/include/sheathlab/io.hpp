#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sheath/asymptotics.hpp"
#include "sheath/diagnostics.hpp"
#include "sheath/evolution.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/stationary.hpp"

namespace sheathlab {

namespace fs = std::filesystem;

/// Column-major table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Writes numbers with 17 significant digits so values round-trip exactly.
void write_csv(const fs::path& path, const Table& table);
void write_csv(std::ostream& out, const Table& table);
Table read_csv(const fs::path& path);

void write_json(const fs::path& path, const nlohmann::json& j);
nlohmann::json read_json(const fs::path& path);

nlohmann::json params_json(const sheath::PlasmaParams& p);
sheath::PlasmaParams params_from_json(const nlohmann::json& j);
nlohmann::json regime_json(const sheath::Regime& r);

/// "x,phi,n,u,T" plus a sidecar with params, regime and tolerances. The
/// sidecar sits next to the CSV with a .json extension.
void save_profile(const fs::path& csv, const sheath::SheathProfile& profile,
                  const std::string& config_hash);
sheath::SheathProfile load_profile(const fs::path& csv);

/// "x,v,u,T,phi" plus a sidecar {t, params, grid, tolerances}.
void save_snapshot(const fs::path& csv, const sheath::EvolutionState& state,
                   const sheath::EvolutionOptions& options, const std::string& config_hash);
sheath::EvolutionState load_snapshot(const fs::path& csv);

/// "t,<observer>..." plus a sidecar {columns, samples, config_hash}.
void save_series(const fs::path& csv, const sheath::DiagnosticsSeries& series,
                 const std::string& config_hash);

fs::path sidecar_of(const fs::path& csv);

/// gnuplot script plotting the given columns of a CSV against its first.
void write_plot_script(const fs::path& script, const fs::path& csv, const std::string& title,
                       const std::vector<std::string>& columns, bool log_y);

nlohmann::json to_json(const sheath::ExpansionReport& report);
nlohmann::json to_json(const sheath::TailReport& report);
nlohmann::json to_json(const sheath::ResidualReport& report);
nlohmann::json to_json(const sheath::DecayFit& fit);
nlohmann::json to_json(const sheath::QuadraticFormReport& report);

}  // namespace sheathlab
