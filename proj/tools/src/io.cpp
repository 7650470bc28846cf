#include "sheathlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "sheath/errors.hpp"

namespace sheathlab {

using nlohmann::json;
using sheath::ErrorCode;
using sheath::raise;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::IoError, "cannot write " + path.string());
  }
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string_view model_name(sheath::TailModel m) {
  return m == sheath::TailModel::Exponential ? "exponential" : "algebraic";
}

}  // namespace

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return columns[i];
    }
  }
  raise(ErrorCode::IoError, "column '" + name + "' not found");
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out << (c ? "," : "") << table.header[c];
  }
  out << '\n';
  std::string line;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) {
        line += ',';
      }
      fmt::format_to(std::back_inserter(line), "{:.17g}", table.columns[c][r]);
    }
    out << line << '\n';
  }
}

void write_csv(const fs::path& path, const Table& table) {
  auto out = open_out(path);
  write_csv(out, table);
  if (!out) {
    raise(ErrorCode::IoError, "failed writing " + path.string());
  }
}

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::IoError, "cannot read " + path.string());
  }
  Table t;
  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::IoError, path.string() + " is empty");
  }
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      t.header.push_back(cell);
    }
  }
  t.columns.resize(t.header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) {
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ls, cell, ',')) {
      if (c >= t.columns.size()) {
        raise(ErrorCode::IoError, fmt::format("{}:{}: too many columns", path.string(), row));
      }
      try {
        t.columns[c].push_back(std::stod(cell));
      } catch (const std::exception&) {
        raise(ErrorCode::IoError, fmt::format("{}:{}: bad number '{}'", path.string(), row, cell));
      }
      ++c;
    }
    if (c != t.columns.size()) {
      raise(ErrorCode::IoError, fmt::format("{}:{}: expected {} columns", path.string(), row,
                                            t.columns.size()));
    }
  }
  return t;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::IoError, "cannot read " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(ErrorCode::IoError, path.string() + ": " + e.what());
  }
}

fs::path sidecar_of(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

json params_json(const sheath::PlasmaParams& p) {
  return {{"m", p.m},         {"R", p.R},         {"gamma", p.gamma},
          {"T_inf", p.T_inf}, {"u_inf", p.u_inf}, {"phi_b", p.phi_b},
          {"n_inf", sheath::PlasmaParams::n_inf}};
}

sheath::PlasmaParams params_from_json(const json& j) {
  try {
    sheath::PlasmaParams p;
    p.m = j.at("m").get<double>();
    p.R = j.at("R").get<double>();
    p.gamma = j.at("gamma").get<double>();
    p.T_inf = j.at("T_inf").get<double>();
    p.u_inf = j.at("u_inf").get<double>();
    p.phi_b = j.at("phi_b").get<double>();
    return p;
  } catch (const json::exception& e) {
    raise(ErrorCode::IoError, std::string("malformed params block: ") + e.what());
  }
}

json regime_json(const sheath::Regime& r) {
  return {{"kind", sheath::to_string(r.kind)}, {"margin", r.margin}};
}

void save_profile(const fs::path& csv, const sheath::SheathProfile& profile,
                  const std::string& config_hash) {
  write_csv(csv, {{"x", "phi", "n", "u", "T"},
                  {profile.x, profile.phi, profile.n, profile.u, profile.T}});
  const auto& m = profile.meta;
  json side = {{"params", params_json(profile.params)},
               {"regime", regime_json(profile.regime)},
               {"tolerances",
                {{"tail_eps", m.tail_eps}, {"quad_tol", m.quad_tol}, {"classify_tol", m.classify_tol}}},
               {"tail_rate", m.tail_rate},
               {"x_cut", m.x_cut ? json(*m.x_cut) : json(nullptr)},
               {"nodes", profile.size()},
               {"length", profile.length()},
               {"config_hash", config_hash}};
  write_json(sidecar_of(csv), side);
}

sheath::SheathProfile load_profile(const fs::path& csv) {
  const auto side_path = sidecar_of(csv);
  if (!fs::exists(csv) || !fs::exists(side_path)) {
    raise(ErrorCode::DependencyMissing, "profile " + csv.string() + " or its sidecar is missing");
  }
  const auto t = read_csv(csv);
  const auto side = read_json(side_path);
  sheath::SheathProfile p;
  p.x = t.column("x");
  p.phi = t.column("phi");
  p.n = t.column("n");
  p.u = t.column("u");
  p.T = t.column("T");
  p.params = params_from_json(side.at("params"));
  const auto& tol = side.at("tolerances");
  p.meta.tail_eps = tol.at("tail_eps").get<double>();
  p.meta.quad_tol = tol.at("quad_tol").get<double>();
  p.meta.classify_tol = tol.at("classify_tol").get<double>();
  p.meta.tail_rate = side.value("tail_rate", 0.0);
  if (side.contains("x_cut") && !side.at("x_cut").is_null()) {
    p.meta.x_cut = side.at("x_cut").get<double>();
  }
  p.regime = sheath::classify_regime(p.params, p.meta.classify_tol);
  return p;
}

void save_snapshot(const fs::path& csv, const sheath::EvolutionState& s,
                   const sheath::EvolutionOptions& options, const std::string& config_hash) {
  write_csv(csv, {{"x", "v", "u", "T", "phi"}, {s.grid.coordinates(), s.v, s.u, s.T, s.phi}});
  json side = {{"t", s.t},
               {"params", params_json(s.params)},
               {"grid", {{"L", s.grid.L}, {"N", s.grid.N}, {"h", s.grid.h()}}},
               {"tolerances",
                {{"poisson_tol", options.poisson.tol},
                 {"poisson_max_iter", options.poisson.max_iter},
                 {"cfl", options.cfl},
                 {"strict_upwind", options.strict_upwind}}},
               {"config_hash", config_hash}};
  write_json(sidecar_of(csv), side);
}

sheath::EvolutionState load_snapshot(const fs::path& csv) {
  const auto side_path = sidecar_of(csv);
  if (!fs::exists(csv) || !fs::exists(side_path)) {
    raise(ErrorCode::DependencyMissing, "snapshot " + csv.string() + " or its sidecar is missing");
  }
  const auto t = read_csv(csv);
  const auto side = read_json(side_path);
  sheath::EvolutionState s;
  s.t = side.at("t").get<double>();
  s.params = params_from_json(side.at("params"));
  s.grid.L = side.at("grid").at("L").get<double>();
  s.grid.N = side.at("grid").at("N").get<std::size_t>();
  s.grid.validate();
  s.v = t.column("v");
  s.u = t.column("u");
  s.T = t.column("T");
  s.phi = t.column("phi");
  if (s.v.size() != s.grid.nodes()) {
    raise(ErrorCode::IoError, "snapshot rows do not match the grid in its sidecar");
  }
  return s;
}

void save_series(const fs::path& csv, const sheath::DiagnosticsSeries& series,
                 const std::string& config_hash) {
  Table t;
  t.header.push_back("t");
  t.columns.push_back(series.t);
  for (std::size_t j = 0; j < series.names.size(); ++j) {
    t.header.push_back(series.names[j]);
    std::vector<double> col;
    col.reserve(series.values.size());
    for (const auto& row : series.values) {
      col.push_back(row[j]);
    }
    t.columns.push_back(std::move(col));
  }
  write_csv(csv, t);
  write_json(sidecar_of(csv), {{"columns", t.header},
                               {"samples", series.t.size()},
                               {"config_hash", config_hash}});
}

void write_plot_script(const fs::path& script, const fs::path& csv, const std::string& title,
                       const std::vector<std::string>& columns, bool log_y) {
  auto out = open_out(script);
  out << "# gnuplot " << script.filename().string() << "\n";
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  out << "set title '" << title << "'\n";
  out << "set grid\n";
  if (log_y) {
    out << "set logscale y\n";
  }
  out << "plot";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? ", \\\n    " : " ") << "'" << csv.filename().string() << "' using 1:'"
        << columns[i] << "' with lines";
  }
  out << "\n";
}

json to_json(const sheath::ExpansionReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"U", sheath::to_string(r.U)},
                    {"i", r.order},
                    {"sup", r.sup},
                    {"sup_over_phib", r.sup_over_phib},
                    {"error_floor", r.error_floor}});
  }
  return {{"phi_b", report.phi_b}, {"rows", rows}};
}

json to_json(const sheath::TailReport& r) {
  return {{"model", model_name(r.model)}, {"fitted", r.fitted},   {"predicted", r.predicted},
          {"r_squared", r.r_squared},     {"x_lo", r.x_lo},       {"x_hi", r.x_hi}};
}

json to_json(const sheath::ResidualReport& r) {
  return {{"mass_flux", r.mass_flux},
          {"momentum", r.momentum},
          {"entropy", r.entropy},
          {"poisson", r.poisson}};
}

json to_json(const sheath::DecayFit& f) {
  json j = {{"r_squared", f.r_squared},
            {"window", {f.t_lo, f.t_hi}},
            {"samples", f.samples}};
  if (f.model == sheath::DecayModel::Exponential) {
    j["model"] = "exponential";
    j["mu"] = f.mu;
  } else {
    j["model"] = "algebraic";
    j["exponent"] = f.exponent;
    j["beta"] = f.beta;
  }
  return j;
}

json to_json(const sheath::QuadraticFormReport& r) {
  return {{"epsilon", r.epsilon},
          {"beta", r.beta},
          {"lambda0", r.lambda0},
          {"positive", r.positive},
          {"discriminants", r.discriminants},
          {"cubic_bound", r.cubic_bound},
          {"c", finite_or_null(r.c)},
          {"c_eigen", finite_or_null(r.c_eigen)},
          {"pass", r.pass},
          {"samples", r.samples.size()}};
}

}  // namespace sheathlab
