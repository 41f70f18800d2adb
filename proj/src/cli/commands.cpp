#include "scfgame/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "scfgame/cli/outputs.hpp"
#include "scfgame/presets.hpp"
#include "scfgame/stability.hpp"

namespace scfgame::cli {

using nlohmann::ordered_json;

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_tracked(CommandResult& result, const std::string& path,
                   const std::string& content) {
  write_file(path, content);
  result.files.push_back(path);
}

void write_effective_config(CommandResult& result,
                            const ExperimentConfig& config) {
  write_tracked(result, join_path(config.output.dir, "effective_config.json"),
                effective_config_json(config).dump(2) + "\n");
}

std::string describe_state(const StrategyState& s) {
  return "(" + format_short(s.x) + ", " + format_short(s.y) + ", " +
         format_short(s.z) + ")";
}

std::string trajectory_filename(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "trajectory_%03zu.csv", index);
  return name;
}

std::vector<ClassifiedEquilibrium> classified_equilibria(
    const ModelParams& params) {
  std::vector<ClassifiedEquilibrium> out;
  for (const auto& eq : enumerate_equilibria(params)) {
    out.push_back({eq, classify(params, eq)});
  }
  return out;
}

std::string vertex_name(const Equilibrium& eq) {
  if (eq.vertex_index > 0) return "E" + std::to_string(eq.vertex_index);
  return to_string(eq.kind);
}

std::string format_eigenvalue(const std::complex<double>& lambda) {
  if (lambda.imag() == 0.0) return format_short(lambda.real());
  const std::string sign = lambda.imag() < 0.0 ? "-" : "+";
  return format_short(lambda.real()) + sign +
         format_short(std::abs(lambda.imag())) + "i";
}

std::string ess_table(const EssConditionReport& report) {
  std::ostringstream out;
  out << "E8 conditions (" << report.model_tag << "):\n";
  for (std::size_t i = 0; i < report.conditions.size(); ++i) {
    const auto& c = report.conditions[i];
    out << "  A" << i + 1 << ": " << c.label << "  [lhs="
        << format_short(c.lhs) << " rhs=" << format_short(c.rhs)
        << " margin=" << format_short(c.margin) << "] "
        << (c.satisfied ? "satisfied" : "violated") << "\n";
  }
  out << "  all satisfied: " << (report.all_satisfied() ? "yes" : "no")
      << "\n";
  return out.str();
}

}  // namespace

CommandResult cmd_simulate(const ExperimentConfig& config) {
  const std::vector<StrategyState> initials =
      materialize(config.initial_states);
  if (initials.empty()) {
    throw ConfigError(ConfigFault::Usage,
                      "simulate: no initial states configured");
  }

  CommandResult result;
  std::vector<Trajectory> trajectories;
  trajectories.reserve(initials.size());

  std::ostringstream printed;
  printed << "simulating " << initials.size() << " trajectories\n";
  for (std::size_t i = 0; i < initials.size(); ++i) {
    Trajectory traj = integrate(config.params, initials[i], config.integrator);
    printed << "  " << describe_state(initials[i]) << " -> ";
    if (traj.converged()) {
      printed << describe_state(traj.attractor) << " (converged, t="
              << format_short(traj.final_sample().t) << ", steps="
              << traj.steps << ")\n";
    } else {
      printed << describe_state(traj.final_sample().state)
              << " (max time reached)\n";
    }
    trajectories.push_back(std::move(traj));
  }

  if (config.output.csv) {
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      write_tracked(result, join_path(config.output.dir, trajectory_filename(i)),
                    trajectory_csv(trajectories[i]));
    }
  }
  if (config.output.svg) {
    write_tracked(result, join_path(config.output.dir, "phase.svg"),
                  phase_plot_svg(trajectories));
  }
  if (config.output.json) {
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      const Trajectory& traj = trajectories[i];
      ordered_json entry;
      entry["initial"] = state_json(traj.samples.front().state);
      entry["terminal"] = traj.converged() ? "converged" : "max_time_reached";
      if (traj.converged()) entry["attractor"] = state_json(traj.attractor);
      entry["final_state"] = state_json(traj.final_sample().state);
      entry["t_final"] = traj.final_sample().t;
      entry["steps"] = traj.steps;
      entry["max_excursion"] = traj.max_excursion;
      runs.push_back(entry);
    }
    ordered_json doc;
    doc["params"] = params_json(config.params);
    doc["runs"] = runs;
    write_tracked(result, join_path(config.output.dir, "simulate.json"),
                  doc.dump(2) + "\n");
  }
  write_effective_config(result, config);
  result.printed = printed.str();
  return result;
}

CommandResult cmd_stability(const ExperimentConfig& config) {
  CommandResult result;
  const auto equilibria = classified_equilibria(config.params);
  const auto ess = ess_conditions(config.params);

  std::ostringstream printed;
  printed << "equilibria (" << equilibria.size() << "):\n";
  for (const auto& entry : equilibria) {
    printed << "  " << vertex_name(entry.equilibrium) << " "
            << describe_state(entry.equilibrium.point) << "  eigenvalues: ";
    for (std::size_t i = 0; i < entry.stability.eigenvalues.size(); ++i) {
      printed << (i > 0 ? ", " : "")
              << format_eigenvalue(entry.stability.eigenvalues[i]);
    }
    printed << "  class: " << to_string(entry.stability.kind) << "\n";
  }
  printed << ess_table(ess);

  write_tracked(result, join_path(config.output.dir, "stability.json"),
                stability_report_json(config.params, equilibria, ess).dump(2) +
                    "\n");
  write_effective_config(result, config);
  result.printed = printed.str();
  return result;
}

CommandResult cmd_basins(const ExperimentConfig& config) {
  CommandResult result;
  const BasinReport report =
      sample_basins(config.params, config.basins.n_samples, config.basins.seed,
                    config.integrator);

  std::ostringstream printed;
  printed << "basin sampling: " << report.total_samples << " samples, seed "
          << report.seed << "\n";
  for (const auto& [point, count] : report.attractor_counts) {
    printed << "  (" << format_short(point[0]) << ", "
            << format_short(point[1]) << ", " << format_short(point[2])
            << "): " << count << " ("
            << format_short(100.0 * static_cast<double>(count) /
                            static_cast<double>(report.total_samples))
            << "%)\n";
  }
  printed << "  unresolved: " << report.unresolved << "\n";

  if (config.output.json) {
    write_tracked(result, join_path(config.output.dir, "basins.json"),
                  basin_report_json(config.params, report).dump(2) + "\n");
  }
  if (config.output.csv) {
    write_tracked(result, join_path(config.output.dir, "basins.csv"),
                  basin_report_csv(report));
  }
  write_effective_config(result, config);
  result.printed = printed.str();
  return result;
}

CommandResult cmd_compare(const ExperimentConfig& config) {
  CommandResult result;
  const ModelComparison cmp = compare_models(config.params);

  std::ostringstream printed;
  printed << "baseline vs blockchain E8 conditions:\n";
  printed << "  condition                                 baseline margin   "
             "blockchain margin   shift\n";
  for (std::size_t i = 0; i < 3; ++i) {
    char line[160];
    std::snprintf(line, sizeof(line), "  A%zu %-38s %15s %19s %7s\n", i + 1,
                  cmp.blockchain.conditions[i].label.c_str(),
                  format_short(cmp.baseline.conditions[i].margin).c_str(),
                  format_short(cmp.blockchain.conditions[i].margin).c_str(),
                  format_short(cmp.margin_shifts[i]).c_str());
    printed << line;
  }
  printed << "  E8: baseline "
          << (cmp.baseline_e8_ess ? "ESS" : "not ESS") << ", blockchain "
          << (cmp.blockchain_e8_ess ? "ESS" : "not ESS");
  if (cmp.baseline_e8_ess != cmp.blockchain_e8_ess) {
    printed << "  << classification flips";
  }
  printed << "\n  pareto improvement: " << (cmp.pareto_flag ? "yes" : "no")
          << "\n";

  write_tracked(result, join_path(config.output.dir, "compare.json"),
                compare_report_json(config.params, cmp).dump(2) + "\n");
  write_effective_config(result, config);
  result.printed = printed.str();
  return result;
}

CommandResult cmd_sweep(const ExperimentConfig& config) {
  if (!config.sweep) {
    throw ConfigError(ConfigFault::Usage,
                      "sweep: the config has no \"sweep\" section");
  }
  const SweepSpec& sweep = *config.sweep;

  struct Axis {
    std::string name;
    std::vector<double> values;
  };
  std::vector<Axis> axes;
  for (const auto& [name, grid] : sweep.axes) {  // std::map: lexicographic
    Axis axis{name, {}};
    for (int i = 0; i < grid.steps; ++i) {
      axis.values.push_back(
          grid.steps == 1
              ? grid.min
              : grid.min + (grid.max - grid.min) * static_cast<double>(i) /
                               static_cast<double>(grid.steps - 1));
    }
    axes.push_back(std::move(axis));
  }

  std::size_t total_cells = 1;
  for (const auto& axis : axes) total_cells *= axis.values.size();

  std::string csv;
  for (const auto& [name, field] : param_fields_ordered()) {
    (void)field;
    csv += name;
    csv += ',';
  }
  csv += "e8_class,a1_margin,a2_margin,a3_margin";
  if (sweep.basin_samples > 0) csv += ",e8_basin_share";
  csv += '\n';

  std::vector<std::size_t> cursor(axes.size(), 0);
  for (std::size_t cell = 0; cell < total_cells; ++cell) {
    ModelParams params = config.params;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      params.*param_fields().at(axes[i].name) = axes[i].values[cursor[i]];
    }

    const auto issues = validate_params(params);
    if (!issues.empty()) {
      std::ostringstream msg;
      msg << "sweep cell " << cell << " has invalid parameters:";
      for (const auto& issue : issues) msg << " " << issue.message << ";";
      throw ConfigError(ConfigFault::Validation, msg.str());
    }

    const Equilibrium e8 = Equilibrium::at({1.0, 1.0, 1.0});
    const StabilityClass cls = classify(params, e8);
    const EssConditionReport ess = ess_conditions(params);

    for (const auto& [name, field] : param_fields_ordered()) {
      (void)name;
      csv += format_double(params.*field);
      csv += ',';
    }
    csv += to_string(cls.kind);
    for (const auto& cond : ess.conditions) {
      csv += ',';
      csv += format_double(cond.margin);
    }
    if (sweep.basin_samples > 0) {
      const BasinReport basins = sample_basins(
          params, static_cast<std::size_t>(sweep.basin_samples),
          sweep.basin_seed, config.integrator);
      csv += ',';
      csv += format_double(static_cast<double>(basins.count_for({1, 1, 1})) /
                           static_cast<double>(basins.total_samples));
    }
    csv += '\n';

    // advance the rightmost axis fastest
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++cursor[i] < axes[i].values.size()) break;
      cursor[i] = 0;
    }
  }

  CommandResult result;
  write_tracked(result, join_path(config.output.dir, "sweep.csv"), csv);
  write_effective_config(result, config);

  std::ostringstream printed;
  printed << "sweep: " << total_cells << " cells over " << axes.size()
          << " axes -> " << result.files.front() << "\n";
  result.printed = printed.str();
  return result;
}

}  // namespace scfgame::cli
