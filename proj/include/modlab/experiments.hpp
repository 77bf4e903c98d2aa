#pragma once

// Experiment configs, runners and deterministic reports for the CLI.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace modlab::experiments {

using OrderedJson = nlohmann::ordered_json;

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::string anchor;  // the theorem or topic the experiment reproduces
};

/// Stable order; one entry per experiment.
const std::vector<ExperimentInfo>& list_experiments();

struct Check {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  std::string provenance;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string experiment;
  OrderedJson params = OrderedJson::object();
  std::vector<Check> checks;

  bool all_pass() const;
};

enum class Format { Json, Csv };

struct ExperimentConfig {
  std::string experiment;
  std::filesystem::path inputs;  // fixture file; empty when the experiment needs none
  nlohmann::json params = nlohmann::json::object();
  std::filesystem::path output;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
};

/// Parses a config file; relative input paths resolve against the config's
/// directory. ConfigError on any schema violation.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Checks the invariants that do not need the fixture (ConfigError).
void validate(const ExperimentConfig& config);

/// Runs the experiment. ConfigError for unreadable or invalid fixtures,
/// ExperimentError for failures raised by the numerical modules.
Report run_experiment(const ExperimentConfig& config);

/// Fixed field order, 17 significant digits, no timestamp.
std::string to_json(const Report& report);
/// Header plus one row per check.
std::string to_csv(const Report& report);
std::string render(const Report& report, Format format);

Format parse_format(const std::string& name);

}  // namespace modlab::experiments
