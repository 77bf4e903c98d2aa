// modlab command-line front end.
//
//   modlab list
//   modlab run --config cfg.json [--output path] [--format json|csv] [--seed n] [--tol-scale x]
//   modlab modular verify ...   (same flags as run, experiment forced to modular-verify)
//
// Exit status: 0 all checks pass, 1 a numeric check failed or a module
// raised, 2 config or fixture error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "modlab/error.hpp"
#include "modlab/experiments.hpp"

namespace {

namespace ex = modlab::experiments;

struct RunFlags {
  std::string config;
  std::string output;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "experiment config (JSON)")->required();
  cmd->add_option("--output", f.output, "report path (default: stdout)");
  cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", f.seed, "seed for randomized suites");
  cmd->add_option("--tol-scale", f.tol_scale, "multiplies every tolerance");
}

int run(const RunFlags& f, const std::optional<std::string>& forced) {
  try {
    ex::ExperimentConfig c = ex::load_config(f.config);
    if (forced && c.experiment != *forced) {
      throw modlab::Error(modlab::ErrorCode::ConfigError, "config selects '" + c.experiment + "', expected " + *forced);
    }
    if (!f.output.empty()) c.output = f.output;
    if (!f.format.empty()) c.format = ex::parse_format(f.format);
    if (f.seed) c.seed = *f.seed;
    if (f.tol_scale) c.tol_scale = *f.tol_scale;
    const ex::Report report = ex::run_experiment(c);
    const std::string text = ex::render(report, c.format);
    if (c.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(c.output, std::ios::binary);
      if (!out) throw modlab::Error(modlab::ErrorCode::ConfigError, "cannot write " + c.output.string());
      out << text;
    }
    std::size_t failed = 0;
    for (const auto& check : report.checks) {
      if (!check.pass) {
        ++failed;
        std::cerr << "FAIL " << check.name << '\n';
      }
    }
    std::cerr << report.experiment << ": " << report.checks.size() - failed << '/' << report.checks.size()
              << " checks pass\n";
    return failed == 0 ? 0 : 1;
  } catch (const modlab::Error& e) {
    std::cerr << "error [" << modlab::to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == modlab::ErrorCode::ConfigError ? 2 : 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular theory and horizon QFT numerics"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list experiments");

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  add_run_flags(run_cmd, run_flags);

  RunFlags verify_flags;
  auto* modular = app.add_subcommand("modular", "modular theory suites");
  modular->require_subcommand(1);
  auto* verify = modular->add_subcommand("verify", "Tomita-Takesaki verification (modular-verify)");
  add_run_flags(verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*list) {
    for (const auto& info : ex::list_experiments()) {
      std::printf("%-20s %-28s %s\n", info.name.c_str(), info.anchor.c_str(), info.description.c_str());
    }
    return 0;
  }
  if (*run_cmd) return run(run_flags, std::nullopt);
  return run(verify_flags, std::string("modular-verify"));
}
