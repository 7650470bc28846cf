#include "sheathlab/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sheath/asymptotics.hpp"
#include "sheath/errors.hpp"
#include "sheath/evolution.hpp"
#include "sheath/params.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/stationary.hpp"
#include "sheathlab/io.hpp"

namespace sheathlab {

using nlohmann::json;
using sheath::ErrorCode;
using sheath::raise;

namespace {

fs::path with_suffix(const fs::path& prefix, const std::string& ext) {
  fs::path p = prefix;
  if (p.extension() == ".csv" || p.extension() == ".json") {
    p.replace_extension();
  }
  p += ext;
  return p;
}

sheath::Regime regime_of(const RunConfig& c) {
  return sheath::classify_regime(c.params, c.stationary.classify_tol);
}

bool degenerate(const RunConfig& c) {
  return regime_of(c).kind == sheath::RegimeKind::Degenerate;
}

// Inputs reused from an earlier run must come from the same configuration.
void require_input(const fs::path& csv, const std::string& hash, const std::string& producer) {
  const auto side = sidecar_of(csv);
  if (!fs::exists(csv) || !fs::exists(side)) {
    raise(ErrorCode::DependencyMissing,
          fmt::format("{} not found; run the {} stage first", csv.string(), producer));
  }
  const auto j = read_json(side);
  if (j.value("config_hash", std::string()) != hash) {
    raise(ErrorCode::DependencyMissing,
          fmt::format("{} was produced by a different configuration; rerun the {} stage",
                      csv.string(), producer));
  }
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

json run_classify(const RunConfig& config) {
  const auto tol = config.stationary.classify_tol;
  const auto regime = sheath::classify_regime(config.params, tol);
  const auto d = sheath::derived_constants(config.params, tol);
  return {{"regime", sheath::to_string(regime.kind)},
          {"margin", regime.margin},
          {"c_crit", d.c_crit},
          {"Gamma", d.Gamma ? json(*d.Gamma) : json(nullptr)},
          {"f_at_c", d.f_at_c}};
}

Table sagdeev_table_csv(const RunConfig& config, double phi_lo, double phi_hi,
                        std::size_t count) {
  const auto rows =
      sheath::sagdeev_table(config.params, phi_lo, phi_hi, count, config.stationary.quad_tol);
  Table t{{"phi", "n", "V"}, {{}, {}, {}}};
  for (const auto& r : rows) {
    t.columns[0].push_back(r.phi);
    t.columns[1].push_back(r.n);
    t.columns[2].push_back(r.V);
  }
  return t;
}

Artifacts run_stationary(const RunConfig& config, const fs::path& prefix) {
  const auto profile =
      sheath::solve_stationary(config.params, grid_request(config), stationary_options(config));
  spdlog::info("stationary: {} nodes on [0, {}], regime {}", profile.size(), profile.length(),
               sheath::to_string(profile.regime.kind));
  const auto csv = with_suffix(prefix, ".csv");
  const auto gp = with_suffix(prefix, ".gp");
  save_profile(csv, profile, config_hash(config));
  write_plot_script(gp, csv, "stationary profile", {"phi", "n", "u", "T"}, false);
  return {{csv, "stationary"}, {sidecar_of(csv), "stationary"}, {gp, "stationary"}};
}

Artifacts run_verify_asymptotics(const fs::path& profile_csv, int min_order, int max_order,
                                 const fs::path& report) {
  if (min_order < 0 || max_order > 3 || min_order > max_order) {
    raise(ErrorCode::InvalidParams,
          fmt::format("orders {}..{} outside 0..3", min_order, max_order));
  }
  const auto profile = load_profile(profile_csv);
  json out;
  out["params"] = params_json(profile.params);
  out["regime"] = regime_json(profile.regime);
  if (profile.regime.kind == sheath::RegimeKind::Degenerate && profile.params.phi_b > 0.0) {
    auto expansion = sheath::verify_expansion(profile, max_order);
    std::erase_if(expansion.rows, [&](const auto& r) { return r.order < min_order; });
    out["expansion"] = to_json(expansion);
  } else {
    out["expansion"] = nullptr;
  }
  try {
    out["tail"] = to_json(sheath::tail_decay_fit(profile, profile.regime));
  } catch (const sheath::Error& e) {
    if (e.code() != ErrorCode::InsufficientTail) {
      throw;
    }
    out["tail"] = {{"error", e.what()}};
  }
  out["residuals"] = to_json(sheath::residual_check(profile));
  write_json(report, out);
  return {{report, "verify-asymptotics"}};
}

Artifacts run_evolve(const RunConfig& config, const EvolveInputs& inputs, const fs::path& dir) {
  const auto hash = config_hash(config);
  const auto opts = evolution_options(config);
  const auto profile = inputs.profile ? load_profile(*inputs.profile)
                                      : sheath::solve_stationary(config.params,
                                                                 grid_request(config),
                                                                 stationary_options(config));
  const auto base = sheath::state_from_profile(profile, opts);
  sheath::EvolutionState reference = base;
  if (use_relaxed_reference(config)) {
    spdlog::info("evolve: relaxing to the discrete equilibrium");
    reference = sheath::discrete_equilibrium(base, 1e-12, 1e4, opts);
  }
  const auto weight = resolve_weight(config);

  sheath::EvolutionState initial;
  if (inputs.restart) {
    initial = load_snapshot(*inputs.restart);
    if (initial.grid.N != reference.grid.N ||
        std::abs(initial.grid.L - reference.grid.L) > 1e-12 * reference.grid.L) {
      raise(ErrorCode::InvalidParams, "restart snapshot grid does not match the profile grid");
    }
    spdlog::info("evolve: restarting from t = {}", initial.t);
  } else {
    auto spec = config.perturbation;
    spec.center = config.perturbation_center.value_or(0.25 * reference.grid.L);
    spec.weight_compat = weight;
    initial = sheath::perturb_state(reference, spec, opts);
  }

  const auto x = reference.grid.coordinates();
  std::vector<sheath::Observer> observers{
      {"norm",
       [&](const sheath::EvolutionState& s) {
         const auto p = sheath::perturbation(s, reference);
         return sheath::weighted_norm(x, {p.varphi, p.psi, p.zeta}, weight, 1);
       }},
      {"energy", [&](const sheath::EvolutionState& s) {
         return sheath::energy_functional(sheath::perturbation(s, reference), weight);
       }}};

  Artifacts out;
  const double every = config.evolve.snapshot_every;
  std::size_t snap_index = 0;
  double next_snap = every > 0.0 ? initial.t + every : 0.0;
  const auto on_sample = [&](const sheath::EvolutionState& s) {
    if (every > 0.0 && s.t >= next_snap * (1.0 - 1e-12)) {
      const auto csv = dir / fmt::format("snapshot_{:04d}.csv", ++snap_index);
      save_snapshot(csv, s, opts, hash);
      out.push_back({csv, "evolve"});
      out.push_back({sidecar_of(csv), "evolve"});
      while (next_snap <= s.t * (1.0 + 1e-12)) {
        next_snap += every;
      }
    }
  };

  sheath::EvolutionState last = initial;
  const auto series = sheath::evolve(
      initial, config.evolve.t_end, config.evolve.observer_period, observers, opts,
      [&](const sheath::EvolutionState& s) {
        on_sample(s);
        last = s;
      });
  spdlog::info("evolve: reached t = {} with {} samples", last.t, series.t.size());

  const auto series_csv = dir / "series.csv";
  save_series(series_csv, series, hash);
  write_plot_script(dir / "series.gp", series_csv, "perturbation norm and energy",
                    {"norm", "energy"}, true);
  const auto snap = dir / "snapshot.csv";
  save_snapshot(snap, last, opts, hash);
  out.insert(out.begin(), {{series_csv, "evolve"},
                           {sidecar_of(series_csv), "evolve"},
                           {dir / "series.gp", "evolve"},
                           {snap, "evolve"},
                           {sidecar_of(snap), "evolve"}});
  return out;
}

Artifacts run_qcheck(const RunConfig& config, const fs::path& report) {
  const auto& p = config.params;
  const auto& q = config.qcheck;
  double beta = 0.0;
  if (q.beta) {
    beta = *q.beta;
  } else if (p.phi_b > 0.0) {
    beta = 0.9 * sheath::degenerate_decay_constant(p) * std::sqrt(p.phi_b);
  }
  const auto xs = linspace(0.0, q.x_max, q.samples);
  const auto r =
      sheath::quadratic_form_check(p, q.epsilon, beta, xs, config.stationary.classify_tol);
  spdlog::info("q-check: epsilon {} beta {} c {} pass {}", r.epsilon, r.beta, r.c, r.pass);

  Table t{{"x", "q1", "q2", "q3", "q4", "q5", "B", "S", "disc12", "disc35", "cubic", "bound",
           "min_eigen_scaled"},
          std::vector<std::vector<double>>(13)};
  for (const auto& s : r.samples) {
    const double row[] = {s.x,      s.q1,     s.q2,     s.q3,    s.q4,    s.q5,
                          s.B,      s.S,      s.disc12, s.disc35, s.cubic, s.bound,
                          s.min_eigen_scaled};
    for (std::size_t c = 0; c < 13; ++c) {
      t.columns[c].push_back(row[c]);
    }
  }
  const auto csv = with_suffix(report, ".csv");
  const auto json_path = with_suffix(report, ".json");
  write_csv(csv, t);
  write_json(json_path, to_json(r));
  return {{json_path, "q-check"}, {csv, "q-check"}};
}

FitRequest fit_request(const RunConfig& config) {
  FitRequest r;
  const auto& m = config.fit.model;
  const bool alg = m == "alg" || (m == "auto" && degenerate(config));
  r.model = alg ? sheath::DecayModel::Algebraic : sheath::DecayModel::Exponential;
  r.t_lo = config.fit.t_lo;
  r.t_hi = config.fit.t_hi;
  if (alg) {
    // Same scale as the algebraic weight.
    const auto w = resolve_weight(config);
    if (const auto* a = std::get_if<sheath::AlgebraicWeight>(&w)) {
      r.beta = a->beta;
    }
  }
  return r;
}

sheath::DecayFit fit_series(const fs::path& series_csv, const FitRequest& request) {
  if (!fs::exists(series_csv)) {
    raise(ErrorCode::DependencyMissing, series_csv.string() + " not found");
  }
  const auto t = read_csv(series_csv);
  const auto& time = t.column("t");
  const auto& norm = t.column(request.column);
  std::optional<std::pair<double, double>> window;
  if (request.t_lo || request.t_hi) {
    const double end = time.empty() ? 0.0 : time.back();
    window = std::pair{request.t_lo.value_or(0.5 * end), request.t_hi.value_or(end)};
  }
  return sheath::decay_fit(time, norm, request.model, window, request.beta);
}

Artifacts run_pipeline(const RunConfig& config, const std::vector<std::string>& stages,
                       const fs::path& dir) {
  std::set<std::string> wanted;
  for (const auto& s : stages) {
    if (std::find(std::begin(kStages), std::end(kStages), s) == std::end(kStages)) {
      raise(ErrorCode::ConfigError, "unknown stage '" + s + "'");
    }
    wanted.insert(s);
  }
  if (wanted.empty()) {
    raise(ErrorCode::ConfigError, "no stages requested");
  }
  const auto hash = config_hash(config);
  fs::create_directories(dir);
  const auto profile_csv = dir / "profile.csv";
  const auto series_csv = dir / "series.csv";

  Artifacts all;
  const auto stage = [&](const std::string& name, const auto& body) {
    if (!wanted.count(name)) {
      return;
    }
    spdlog::info("pipeline: stage {}", name);
    try {
      auto produced = body();
      all.insert(all.end(), produced.begin(), produced.end());
    } catch (const sheath::Error& e) {
      raise(e.code(), fmt::format("stage {}: {}", name, e.detail()));
    }
  };

  stage("stationary", [&] { return run_stationary(config, dir / "profile"); });
  stage("verify-asymptotics", [&] {
    require_input(profile_csv, hash, "stationary");
    return run_verify_asymptotics(profile_csv, 0, 3, dir / "asymptotics.json");
  });
  stage("evolve", [&] {
    require_input(profile_csv, hash, "stationary");
    return run_evolve(config, {profile_csv, std::nullopt}, dir);
  });
  stage("q-check", [&] {
    if (!degenerate(config) || !(config.params.phi_b > 0.0)) {
      spdlog::info("pipeline: q-check applies to degenerate configs only; skipped");
      return Artifacts{};
    }
    return run_qcheck(config, dir / "qcheck.json");
  });
  stage("decay-fit", [&] {
    require_input(series_csv, hash, "evolve");
    const auto fit = fit_series(series_csv, fit_request(config));
    json j = to_json(fit);
    auto energy_request = fit_request(config);
    energy_request.column = "energy";
    try {
      j["energy"] = to_json(fit_series(series_csv, energy_request));
    } catch (const sheath::Error& e) {
      if (e.code() != ErrorCode::DegenerateFit) {
        throw;
      }
      j["energy"] = {{"error", e.detail()}};
    }
    write_json(dir / "fit.json", j);
    return Artifacts{{dir / "fit.json", "decay-fit"}};
  });

  json list = json::array();
  for (const auto& a : all) {
    list.push_back({{"path", fs::relative(a.path, dir).generic_string()},
                    {"stage", a.stage},
                    {"config_hash", hash}});
  }
  json requested = json::array();
  for (const auto* s : kStages) {
    if (wanted.count(s)) {
      requested.push_back(s);
    }
  }
  const auto now = std::chrono::system_clock::now();
  const json manifest = {{"config_hash", hash},
                         {"created", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(
                                         std::chrono::system_clock::to_time_t(now)))},
                         {"stages", requested},
                         {"config", to_json(config)},
                         {"artifacts", list}};
  write_json(dir / "manifest.json", manifest);
  all.push_back({dir / "manifest.json", "pipeline"});
  return all;
}

}  // namespace sheathlab
