#ifndef SCFGAME_CLI_OUTPUTS_HPP
#define SCFGAME_CLI_OUTPUTS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "scfgame/dynamics.hpp"
#include "scfgame/stability.hpp"

namespace scfgame::cli {

// Shortest round-trip decimal form of a double (locale-independent).
std::string format_double(double value);

// Compact 6-significant-digit form for printed tables.
std::string format_short(double value);

// Trajectory CSV: header t,x,y,z, one row per recorded sample, plain
// decimal notation.
std::string trajectory_csv(const Trajectory& trajectory);

// Combined phase plot: the trajectories as paths in three 2D panels
// (x-y, x-z, y-z), start points as open circles, attractors marked.
std::string phase_plot_svg(const std::vector<Trajectory>& trajectories);

nlohmann::ordered_json params_json(const ModelParams& params);
nlohmann::ordered_json state_json(const StrategyState& state);
nlohmann::ordered_json ess_report_json(const EssConditionReport& report);

struct ClassifiedEquilibrium {
  Equilibrium equilibrium;
  StabilityClass stability;
};

nlohmann::ordered_json stability_report_json(
    const ModelParams& params,
    const std::vector<ClassifiedEquilibrium>& equilibria,
    const EssConditionReport& ess);

nlohmann::ordered_json compare_report_json(const ModelParams& params,
                                           const ModelComparison& comparison);

nlohmann::ordered_json basin_report_json(const ModelParams& params,
                                         const BasinReport& report);

std::string basin_report_csv(const BasinReport& report);

// Creates parent directories as needed and writes content byte-for-byte.
void write_file(const std::string& path, const std::string& content);

}  // namespace scfgame::cli

#endif  // SCFGAME_CLI_OUTPUTS_HPP
