#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "iago/bench.hpp"

namespace iago {

struct GridConfig {
  double lower = -1.0;
  double upper = 0.0;
  int m = 51;
};

struct ObjectiveConfig {
  std::string kind = "res_surrogate";  // "res_surrogate" | "gp_draw"
  double noise_std = kResSurrogateNoiseStd;
  std::uint64_t seed = 0;                 // gp_draw only
  std::optional<CovarianceSpec> model;    // gp_draw only
};

/// Fully resolved harness configuration: one file drives all subcommands.
struct HarnessConfig {
  std::uint64_t seed = 0;
  GridConfig grid;
  ObjectiveConfig objective;
  OptimizerConfig optimizer;  // noise_variance derives from objective.noise_std
  std::vector<PolicySpec> bench_policies;
  int bench_runs = 1;
  std::vector<std::int64_t> bench_checkpoints;
  CriterionNoiseConfig criterion_noise;
};

/// Parses and validates a config file. Unknown keys and malformed values
/// raise ConfigError naming the offending field.
HarnessConfig load_config(const std::filesystem::path& path);
HarnessConfig parse_config(const nlohmann::json& doc);

/// The full resolved configuration (defaults filled in); embedded verbatim
/// in every output the harness writes.
nlohmann::ordered_json resolved_config(const HarnessConfig& config);

CandidateGrid make_grid(const HarnessConfig& config);
NoisyObjective make_objective(const HarnessConfig& config, const CandidateGrid& grid);

}  // namespace iago
