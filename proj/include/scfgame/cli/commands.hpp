#ifndef SCFGAME_CLI_COMMANDS_HPP
#define SCFGAME_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include "scfgame/cli/config.hpp"

namespace scfgame::cli {

struct CommandResult {
  std::vector<std::string> files;  // paths written, in write order
  std::string printed;             // human-readable text for stdout
};

// Integrates each configured initial state and writes one trajectory CSV
// per run plus a combined phase plot.
CommandResult cmd_simulate(const ExperimentConfig& config);

// Enumerates and classifies all equilibria, evaluates the E8 conditions,
// and writes stability.json.
CommandResult cmd_stability(const ExperimentConfig& config);

// Monte-Carlo basin sampling; writes basins.json (and basins.csv).
CommandResult cmd_basins(const ExperimentConfig& config);

// Baseline-vs-blockchain condition comparison; writes compare.json.
// Refuses when every cost reduction is zero.
CommandResult cmd_compare(const ExperimentConfig& config);

// Cartesian parameter sweep; writes sweep.csv with one row per grid cell
// in lexicographic axis order.
CommandResult cmd_sweep(const ExperimentConfig& config);

}  // namespace scfgame::cli

#endif  // SCFGAME_CLI_COMMANDS_HPP
