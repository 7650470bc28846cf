#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sheath/errors.hpp"
#include "sheathlab/commands.hpp"
#include "sheathlab/config.hpp"
#include "sheathlab/io.hpp"

namespace fs = std::filesystem;
using sheath::ErrorCode;

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return 1;
    case ErrorCode::InvalidParams: return 2;
    case ErrorCode::DependencyMissing: return 3;
    case ErrorCode::IoError: return 5;
    default: return 4;
  }
}

// SHEATH_OUT_ROOT prefixes relative output paths.
fs::path out_path(const std::string& out) {
  fs::path p(out);
  if (const char* root = std::getenv("SHEATH_OUT_ROOT"); root && *root && p.is_relative()) {
    return fs::path(root) / p;
  }
  return p;
}

void report(const sheathlab::Artifacts& artifacts) {
  for (const auto& a : artifacts) {
    std::cout << a.path.string() << '\n';
  }
}

std::pair<int, int> parse_orders(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(s);
      return {k, k};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    sheath::raise(ErrorCode::ConfigError, "--orders expects i..j, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary sheaths and their stability for the Euler-Poisson system"};
  app.require_subcommand(1);
  // Global options may follow the subcommand.
  app.fallthrough();

  std::string config_path;
  std::string out;
  std::string log_level = "warn";
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out", out, "output path, prefix or directory (command dependent)");
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto* classify = app.add_subcommand("classify", "print the regime and derived constants");

  double phi_lo = 0.0, phi_hi = 0.0;
  std::size_t count = 101;
  auto* sagdeev = app.add_subcommand("sagdeev", "tabulate f^{-1} and V as CSV \"phi,n,V\"");
  sagdeev->add_option("--phi-lo", phi_lo)->required();
  sagdeev->add_option("--phi-hi", phi_hi)->required();
  sagdeev->add_option("--count", count)->check(CLI::PositiveNumber);

  auto* stationary = app.add_subcommand("stationary", "solve the stationary profile");

  std::string profile_path;
  std::string orders = "0..3";
  auto* verify = app.add_subcommand("verify-asymptotics", "expansion, tail and residual report");
  verify->add_option("--profile", profile_path, "profile CSV")->required();
  verify->add_option("--orders", orders, "derivative orders, e.g. 0..3");

  std::optional<double> t_end, snapshot_every;
  std::string evolve_profile, restart;
  auto* evolve = app.add_subcommand("evolve", "evolve a perturbed sheath");
  evolve->add_option("--t-end", t_end);
  evolve->add_option("--snapshot-every", snapshot_every);
  evolve->add_option("--profile", evolve_profile, "start from a saved profile");
  evolve->add_option("--restart", restart, "continue from a snapshot CSV");

  std::optional<double> epsilon, beta;
  auto* qcheck = app.add_subcommand("q-check", "check the weighted quadratic form");
  qcheck->add_option("--epsilon", epsilon);
  qcheck->add_option("--beta", beta);

  std::string series_path, model, column = "norm";
  std::optional<double> t_lo, t_hi, fit_beta;
  auto* fit = app.add_subcommand("decay-fit", "fit the decay of a norm series");
  fit->add_option("--series", series_path)->required();
  fit->add_option("--model", model)->check(CLI::IsMember({"exp", "alg"}));
  fit->add_option("--column", column);
  fit->add_option("--t-lo", t_lo);
  fit->add_option("--t-hi", t_hi);
  fit->add_option("--beta", fit_beta, "scale of the algebraic model (1 + beta t)");

  std::vector<std::string> stages(std::begin(sheathlab::kStages), std::end(sheathlab::kStages));
  auto* pipeline = app.add_subcommand("pipeline", "run stages and write a manifest");
  pipeline->add_option("--stages", stages, "comma separated subset")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  auto logger = spdlog::stderr_color_mt("sheathlab");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    const auto config = [&] {
      if (config_path.empty()) {
        sheath::raise(ErrorCode::ConfigError, "--config is required");
      }
      return sheathlab::load_config(config_path);
    };
    const auto need_out = [&](const char* what) {
      if (out.empty()) {
        sheath::raise(ErrorCode::ConfigError, std::string("--out is required: ") + what);
      }
      return out_path(out);
    };

    if (*classify) {
      const auto j = sheathlab::run_classify(config());
      if (!out.empty()) {
        sheathlab::write_json(out_path(out), j);
      }
      std::cout << j.dump(2) << '\n';
    } else if (*sagdeev) {
      const auto table = sheathlab::sagdeev_table_csv(config(), phi_lo, phi_hi, count);
      if (out.empty()) {
        sheathlab::write_csv(std::cout, table);
      } else {
        sheathlab::write_csv(out_path(out), table);
      }
    } else if (*stationary) {
      report(sheathlab::run_stationary(config(), need_out("profile prefix")));
    } else if (*verify) {
      const auto [lo, hi] = parse_orders(orders);
      report(sheathlab::run_verify_asymptotics(profile_path, lo, hi, need_out("report path")));
    } else if (*evolve) {
      auto c = config();
      if (t_end) {
        c.evolve.t_end = *t_end;
      }
      if (snapshot_every) {
        c.evolve.snapshot_every = *snapshot_every;
      }
      sheathlab::EvolveInputs inputs;
      if (!evolve_profile.empty()) {
        inputs.profile = evolve_profile;
      }
      if (!restart.empty()) {
        inputs.restart = restart;
      }
      const auto dir = need_out("output directory");
      fs::create_directories(dir);
      report(sheathlab::run_evolve(c, inputs, dir));
    } else if (*qcheck) {
      auto c = config();
      if (epsilon) {
        c.qcheck.epsilon = *epsilon;
      }
      if (beta) {
        c.qcheck.beta = *beta;
      }
      report(sheathlab::run_qcheck(c, need_out("report path")));
    } else if (*fit) {
      sheathlab::FitRequest request;
      if (!config_path.empty()) {
        request = sheathlab::fit_request(sheathlab::load_config(config_path));
      }
      if (!model.empty()) {
        request.model =
            model == "alg" ? sheath::DecayModel::Algebraic : sheath::DecayModel::Exponential;
      } else if (config_path.empty()) {
        sheath::raise(ErrorCode::ConfigError, "--model is required without --config");
      }
      request.column = column;
      if (t_lo) {
        request.t_lo = t_lo;
      }
      if (t_hi) {
        request.t_hi = t_hi;
      }
      if (fit_beta) {
        request.beta = *fit_beta;
      }
      const auto j = sheathlab::to_json(sheathlab::fit_series(series_path, request));
      if (!out.empty()) {
        sheathlab::write_json(out_path(out), j);
      }
      std::cout << j.dump(2) << '\n';
    } else if (*pipeline) {
      report(sheathlab::run_pipeline(config(), stages, need_out("output directory")));
    }
  } catch (const sheath::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
