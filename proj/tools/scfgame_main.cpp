// Command-line front end for the supply-chain-finance evolutionary game
// engine: simulate / stability / basins / compare / sweep experiments
// driven by a JSON config.
//
// Exit codes: 0 success, 1 usage or config error, 2 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scfgame/cli/commands.hpp"
#include "scfgame/cli/config.hpp"
#include "scfgame/dynamics.hpp"
#include "scfgame/stability.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> formats;
  std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file (JSON)")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
  cmd->add_option("--format", args.formats,
                  "comma-separated output formats: csv,json,svg");
  cmd->add_option("--seed", args.seed, "experiment seed (overrides config)");
}

int run(const std::string& name, const CommonArgs& args) {
  using namespace scfgame;
  using namespace scfgame::cli;

  ExperimentConfig config = load_config(args.config_path);
  apply_overrides(config, args.out_dir, args.formats, args.seed);

  CommandResult result;
  if (name == "simulate") {
    result = cmd_simulate(config);
  } else if (name == "stability") {
    result = cmd_stability(config);
  } else if (name == "basins") {
    result = cmd_basins(config);
  } else if (name == "compare") {
    result = cmd_compare(config);
  } else {
    result = cmd_sweep(config);
  }

  std::cout << result.printed;
  for (const auto& file : result.files) {
    std::cout << "wrote " << file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical engine for the tripartite supply-chain-finance "
      "evolutionary game: replicator dynamics, equilibrium stability and "
      "basin-of-attraction experiments"};
  app.require_subcommand(1);

  CommonArgs args;
  const char* const names[] = {"simulate", "stability", "basins", "compare",
                               "sweep"};
  const char* const descriptions[] = {
      "integrate trajectories and plot phase paths",
      "enumerate equilibria, classify stability, report E8 conditions",
      "Monte-Carlo basin-of-attraction sampling",
      "baseline vs blockchain condition comparison",
      "Cartesian parameter sweep to CSV"};
  for (std::size_t i = 0; i < 5; ++i) {
    CLI::App* cmd = app.add_subcommand(names[i], descriptions[i]);
    add_common_options(cmd, args);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run(name, args);
  } catch (const scfgame::cli::ConfigError& e) {
    std::cerr << "error [" << to_string(e.fault()) << "]: " << e.what()
              << "\n";
    return 1;
  } catch (const scfgame::ValidationError& e) {
    std::cerr << "error [ValidationFailed]: " << e.what() << "\n";
    return 1;
  } catch (const scfgame::ComparisonDegenerate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const scfgame::NonFiniteState& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
