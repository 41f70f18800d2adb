#ifndef SCFGAME_CLI_CONFIG_HPP
#define SCFGAME_CLI_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scfgame/dynamics.hpp"
#include "scfgame/params.hpp"

namespace scfgame::cli {

enum class ConfigFault { Parse, UnknownKey, Validation, Usage };

const char* to_string(ConfigFault fault);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigFault fault, const std::string& message)
      : std::runtime_error(message), fault_(fault) {}
  ConfigFault fault() const { return fault_; }

 private:
  ConfigFault fault_;
};

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
};

struct InitialStates {
  enum class Mode { Explicit, Grid, Random };
  Mode mode = Mode::Grid;
  std::vector<StrategyState> states;  // Explicit
  int per_axis = 2;                   // Grid
  double margin = 0.1;                // Grid
  int n = 8;                          // Random
  std::uint64_t seed = 1;             // Random
};

// Expands the initial-state specification into concrete states. Grid mode
// places per_axis points per axis from margin to 1-margin (a single point
// sits at 0.5); random mode draws seeded uniform states from (0,1)^3.
std::vector<StrategyState> materialize(const InitialStates& spec);

struct SweepSpec {
  std::map<std::string, GridAxis> axes;  // keyed by ModelParams field name
  int basin_samples = 0;                 // 0 disables the basin-share column
  std::uint64_t basin_seed = 42;
};

struct BasinSpec {
  std::size_t n_samples = 1000;
  std::uint64_t seed = 42;
};

struct OutputSpec {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
  bool svg = true;
};

struct ExperimentConfig {
  ModelParams params;
  IntegratorConfig integrator;
  InitialStates initial_states;
  BasinSpec basins;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
};

// Parses and validates an experiment config. Unknown keys anywhere are a
// hard error; optional sections fall back to their documented defaults;
// the model parameters must pass validate_params.
ExperimentConfig load_config(const std::string& path);

// Same, from an already-parsed document; `source` names the input in
// error messages.
ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  const std::string& source);

// Serializes the effective values (defaults applied, presets folded in)
// in the same schema load_config accepts.
nlohmann::ordered_json effective_config_json(const ExperimentConfig& config);

// Command-line overrides; `formats` is the comma-separated list from
// --format (e.g. "csv,svg").
void apply_overrides(ExperimentConfig& config,
                     const std::optional<std::string>& out_dir,
                     const std::optional<std::string>& formats,
                     const std::optional<std::uint64_t>& seed);

}  // namespace scfgame::cli

#endif  // SCFGAME_CLI_CONFIG_HPP
