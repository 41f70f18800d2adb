#include "scfgame/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "scfgame/presets.hpp"

namespace scfgame::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(ConfigFault fault, const std::string& message) {
  throw ConfigError(fault, message);
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) {
    fail(ConfigFault::Parse, path + " must be a JSON object");
  }
}

// Rejects keys outside the allowed set, so a misspelled parameter cannot
// silently fall back to a default.
void reject_unknown_keys(const json& node, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  require_object(node, path);
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return key == k;
        }) == allowed.end()) {
      fail(ConfigFault::UnknownKey, "unknown key \"" + key + "\" in " + path);
    }
  }
}

const json* get(const json& node, const char* key) {
  const auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

double require_number(const json& node, const std::string& path) {
  if (!node.is_number()) {
    fail(ConfigFault::Parse, path + " must be a number");
  }
  return node.get<double>();
}

int require_int(const json& node, const std::string& path) {
  if (!node.is_number_integer()) {
    fail(ConfigFault::Parse, path + " must be an integer");
  }
  return node.get<int>();
}

std::uint64_t require_u64(const json& node, const std::string& path) {
  if (!node.is_number_unsigned() &&
      !(node.is_number_integer() && node.get<std::int64_t>() >= 0)) {
    fail(ConfigFault::Parse, path + " must be a non-negative integer");
  }
  return node.get<std::uint64_t>();
}

std::string require_string(const json& node, const std::string& path) {
  if (!node.is_string()) {
    fail(ConfigFault::Parse, path + " must be a string");
  }
  return node.get<std::string>();
}

ModelParams parse_params(const json& node, const std::string& path) {
  require_object(node, path);
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (!param_fields().count(key)) {
      fail(ConfigFault::UnknownKey, "unknown key \"" + key + "\" in " + path);
    }
  }
  ModelParams params;
  for (const auto& [name, field] : param_fields()) {
    const json* value = get(node, name.c_str());
    if (value == nullptr) {
      fail(ConfigFault::Parse,
           path + " is missing required key \"" + name +
               "\"; all model parameters must be spelled out");
    }
    params.*field = require_number(*value, path + "." + name);
  }
  return params;
}

LoanTermClass parse_term(const std::string& text, const std::string& path) {
  if (text == "within_one_year") return LoanTermClass::WithinOneYear;
  if (text == "one_to_five_years") return LoanTermClass::OneToFiveYears;
  if (text == "above_five_years") return LoanTermClass::AboveFiveYears;
  fail(ConfigFault::Parse,
       path + ": unknown loan term class \"" + text +
           "\" (expected within_one_year, one_to_five_years or "
           "above_five_years)");
}

ModelParams parse_rate_presets(const json& node, const std::string& path,
                               ModelParams params) {
  if (!node.is_array()) {
    fail(ConfigFault::Parse, path + " must be an array");
  }
  std::size_t index = 0;
  for (const auto& entry : node) {
    const std::string entry_path = path + "[" + std::to_string(index++) + "]";
    reject_unknown_keys(entry, entry_path, {"term", "principal", "target"});
    const json* term = get(entry, "term");
    const json* principal = get(entry, "principal");
    if (term == nullptr || principal == nullptr) {
      fail(ConfigFault::Parse,
           entry_path + " requires \"term\" and \"principal\"");
    }
    RateTarget target = RateTarget::SmeLoanInterest;
    if (const json* target_node = get(entry, "target")) {
      const std::string text =
          require_string(*target_node, entry_path + ".target");
      if (text == "I1") {
        target = RateTarget::SmeLoanInterest;
      } else if (text == "I2") {
        target = RateTarget::CoreRepaymentInterest;
      } else {
        fail(ConfigFault::Parse,
             entry_path + ".target must be \"I1\" or \"I2\"");
      }
    }
    const RatePreset preset = make_rate_preset(
        parse_term(require_string(*term, entry_path + ".term"), entry_path),
        require_number(*principal, entry_path + ".principal"));
    params = apply_rate_preset(preset, params, target);
  }
  return params;
}

IntegratorConfig parse_integrator(const json& node, const std::string& path) {
  reject_unknown_keys(node, path,
                      {"step_size", "t_max", "convergence_eps",
                       "vertex_snap_eps", "record_every"});
  IntegratorConfig config;
  if (const json* v = get(node, "step_size"))
    config.step_size = require_number(*v, path + ".step_size");
  if (const json* v = get(node, "t_max"))
    config.t_max = require_number(*v, path + ".t_max");
  if (const json* v = get(node, "convergence_eps"))
    config.convergence_eps = require_number(*v, path + ".convergence_eps");
  if (const json* v = get(node, "vertex_snap_eps"))
    config.vertex_snap_eps = require_number(*v, path + ".vertex_snap_eps");
  if (const json* v = get(node, "record_every"))
    config.record_every = require_int(*v, path + ".record_every");
  try {
    validate_config(config);
  } catch (const std::invalid_argument& e) {
    fail(ConfigFault::Validation, std::string(e.what()) + " in " + path);
  }
  return config;
}

StrategyState parse_state(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 3) {
    fail(ConfigFault::Parse, path + " must be an array [x, y, z]");
  }
  StrategyState state{require_number(node[0], path + "[0]"),
                      require_number(node[1], path + "[1]"),
                      require_number(node[2], path + "[2]")};
  if (!state.in_cube()) {
    fail(ConfigFault::Validation,
         path + " must lie inside the unit cube [0,1]^3");
  }
  return state;
}

InitialStates parse_initial_states(const json& node, const std::string& path) {
  reject_unknown_keys(node, path, {"explicit", "grid", "random"});
  InitialStates spec;
  const json* explicit_node = get(node, "explicit");
  const json* grid_node = get(node, "grid");
  const json* random_node = get(node, "random");
  const int given = (explicit_node != nullptr) + (grid_node != nullptr) +
                    (random_node != nullptr);
  if (given != 1) {
    fail(ConfigFault::Parse,
         path + " must contain exactly one of \"explicit\", \"grid\" or "
                "\"random\"");
  }

  if (explicit_node != nullptr) {
    spec.mode = InitialStates::Mode::Explicit;
    if (!explicit_node->is_array()) {
      fail(ConfigFault::Parse, path + ".explicit must be an array of states");
    }
    std::size_t index = 0;
    for (const auto& entry : *explicit_node) {
      spec.states.push_back(parse_state(
          entry, path + ".explicit[" + std::to_string(index++) + "]"));
    }
    if (spec.states.empty()) {
      fail(ConfigFault::Usage, path + ".explicit must not be empty");
    }
  } else if (grid_node != nullptr) {
    spec.mode = InitialStates::Mode::Grid;
    reject_unknown_keys(*grid_node, path + ".grid", {"per_axis", "margin"});
    if (const json* v = get(*grid_node, "per_axis"))
      spec.per_axis = require_int(*v, path + ".grid.per_axis");
    if (const json* v = get(*grid_node, "margin"))
      spec.margin = require_number(*v, path + ".grid.margin");
    if (spec.per_axis < 1) {
      fail(ConfigFault::Validation, path + ".grid.per_axis must be >= 1");
    }
    if (!(spec.margin >= 0.0 && spec.margin <= 0.5)) {
      fail(ConfigFault::Validation, path + ".grid.margin must lie in [0, 0.5]");
    }
  } else {
    spec.mode = InitialStates::Mode::Random;
    reject_unknown_keys(*random_node, path + ".random", {"n", "seed"});
    if (const json* v = get(*random_node, "n"))
      spec.n = require_int(*v, path + ".random.n");
    if (const json* v = get(*random_node, "seed"))
      spec.seed = require_u64(*v, path + ".random.seed");
    if (spec.n < 1) {
      fail(ConfigFault::Validation, path + ".random.n must be >= 1");
    }
  }
  return spec;
}

BasinSpec parse_basins(const json& node, const std::string& path) {
  reject_unknown_keys(node, path, {"n_samples", "seed"});
  BasinSpec spec;
  if (const json* v = get(node, "n_samples")) {
    const int n = require_int(*v, path + ".n_samples");
    if (n < 1) fail(ConfigFault::Validation, path + ".n_samples must be >= 1");
    spec.n_samples = static_cast<std::size_t>(n);
  }
  if (const json* v = get(node, "seed"))
    spec.seed = require_u64(*v, path + ".seed");
  return spec;
}

SweepSpec parse_sweep(const json& node, const std::string& path) {
  reject_unknown_keys(node, path, {"axes", "basin_samples", "basin_seed"});
  SweepSpec spec;
  const json* axes_node = get(node, "axes");
  if (axes_node == nullptr) {
    fail(ConfigFault::Parse, path + " requires \"axes\"");
  }
  if (!axes_node->is_object() || axes_node->empty()) {
    fail(ConfigFault::Parse,
         path + ".axes must be a non-empty object keyed by parameter name");
  }
  for (const auto& [name, axis_node] : axes_node->items()) {
    if (!param_fields().count(name)) {
      fail(ConfigFault::UnknownKey,
           path + ".axes: \"" + name + "\" is not a model parameter");
    }
    const std::string axis_path = path + ".axes." + name;
    reject_unknown_keys(axis_node, axis_path, {"min", "max", "steps"});
    GridAxis axis;
    const json* min_node = get(axis_node, "min");
    const json* max_node = get(axis_node, "max");
    const json* steps_node = get(axis_node, "steps");
    if (min_node == nullptr || max_node == nullptr || steps_node == nullptr) {
      fail(ConfigFault::Parse,
           axis_path + " requires \"min\", \"max\" and \"steps\"");
    }
    axis.min = require_number(*min_node, axis_path + ".min");
    axis.max = require_number(*max_node, axis_path + ".max");
    axis.steps = require_int(*steps_node, axis_path + ".steps");
    if (axis.steps < 1) {
      fail(ConfigFault::Validation, axis_path + ".steps must be >= 1");
    }
    if (!(axis.min <= axis.max)) {
      fail(ConfigFault::Validation, axis_path + ": min must be <= max");
    }
    spec.axes[name] = axis;
  }
  if (const json* v = get(node, "basin_samples")) {
    spec.basin_samples = require_int(*v, path + ".basin_samples");
    if (spec.basin_samples < 0) {
      fail(ConfigFault::Validation, path + ".basin_samples must be >= 0");
    }
  }
  if (const json* v = get(node, "basin_seed"))
    spec.basin_seed = require_u64(*v, path + ".basin_seed");
  return spec;
}

OutputSpec parse_output(const json& node, const std::string& path) {
  reject_unknown_keys(node, path, {"dir", "formats"});
  OutputSpec spec;
  if (const json* v = get(node, "dir"))
    spec.dir = require_string(*v, path + ".dir");
  if (const json* v = get(node, "formats")) {
    if (!v->is_array()) {
      fail(ConfigFault::Parse, path + ".formats must be an array");
    }
    spec.csv = spec.json = spec.svg = false;
    for (const auto& entry : *v) {
      const std::string fmt = require_string(entry, path + ".formats[]");
      if (fmt == "csv") {
        spec.csv = true;
      } else if (fmt == "json") {
        spec.json = true;
      } else if (fmt == "svg") {
        spec.svg = true;
      } else {
        fail(ConfigFault::Parse, path + ".formats: unknown format \"" + fmt +
                                     "\" (expected csv, json or svg)");
      }
    }
  }
  if (!spec.csv && !spec.json && !spec.svg) {
    fail(ConfigFault::Validation,
         path + ": at least one output format must be enabled");
  }
  return spec;
}

std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

const char* to_string(ConfigFault fault) {
  switch (fault) {
    case ConfigFault::Parse:
      return "ParseError";
    case ConfigFault::UnknownKey:
      return "UnknownKey";
    case ConfigFault::Validation:
      return "ValidationFailed";
    case ConfigFault::Usage:
      return "UsageError";
  }
  return "unknown";
}

std::vector<StrategyState> materialize(const InitialStates& spec) {
  switch (spec.mode) {
    case InitialStates::Mode::Explicit:
      return spec.states;
    case InitialStates::Mode::Grid: {
      std::vector<double> axis;
      if (spec.per_axis == 1) {
        axis.push_back(0.5);
      } else {
        const double lo = spec.margin;
        const double hi = 1.0 - spec.margin;
        for (int i = 0; i < spec.per_axis; ++i) {
          axis.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(spec.per_axis - 1));
        }
      }
      std::vector<StrategyState> states;
      states.reserve(axis.size() * axis.size() * axis.size());
      for (double x : axis) {
        for (double y : axis) {
          for (double z : axis) states.push_back({x, y, z});
        }
      }
      return states;
    }
    case InitialStates::Mode::Random: {
      UniformOpen01 rng(spec.seed);
      std::vector<StrategyState> states;
      states.reserve(static_cast<std::size_t>(spec.n));
      for (int i = 0; i < spec.n; ++i) states.push_back(rng.next_state());
      return states;
    }
  }
  return {};
}

ExperimentConfig config_from_json(const json& doc, const std::string& source) {
  reject_unknown_keys(doc, source,
                      {"preset", "params", "rate_presets", "integrator",
                       "initial_states", "basins", "sweep", "output"});
  ExperimentConfig config;

  const json* preset_node = get(doc, "preset");
  const json* params_node = get(doc, "params");
  if ((preset_node != nullptr) == (params_node != nullptr)) {
    fail(ConfigFault::Parse,
         source + " must contain exactly one of \"preset\" or \"params\"");
  }
  if (preset_node != nullptr) {
    const std::string name = require_string(*preset_node, source + ".preset");
    const auto& presets = named_presets();
    const auto it = presets.find(name);
    if (it == presets.end()) {
      std::string known;
      for (const auto& [preset_name, fn] : presets) {
        (void)fn;
        known += known.empty() ? preset_name : ", " + preset_name;
      }
      fail(ConfigFault::Parse, source + ".preset: unknown preset \"" + name +
                                   "\" (known: " + known + ")");
    }
    config.params = it->second();
  } else {
    config.params = parse_params(*params_node, source + ".params");
  }

  if (const json* v = get(doc, "rate_presets")) {
    config.params =
        parse_rate_presets(*v, source + ".rate_presets", config.params);
  }

  const auto issues = validate_params(config.params);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << source << ".params failed validation:";
    for (const auto& issue : issues) {
      msg << "\n  [" << scfgame::to_string(issue.fault) << "] "
          << issue.message;
    }
    fail(ConfigFault::Validation, msg.str());
  }

  if (const json* v = get(doc, "integrator")) {
    config.integrator = parse_integrator(*v, source + ".integrator");
  }
  if (const json* v = get(doc, "initial_states")) {
    config.initial_states = parse_initial_states(*v, source + ".initial_states");
  }
  if (const json* v = get(doc, "basins")) {
    config.basins = parse_basins(*v, source + ".basins");
  }
  if (const json* v = get(doc, "sweep")) {
    config.sweep = parse_sweep(*v, source + ".sweep");
  }
  if (const json* v = get(doc, "output")) {
    config.output = parse_output(*v, source + ".output");
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ConfigFault::Parse, "cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ConfigFault::Parse, "malformed JSON in " + path + " at " +
                                 line_of(text, e.byte) + ": " + e.what());
  }
  return config_from_json(doc, path);
}

ordered_json effective_config_json(const ExperimentConfig& config) {
  ordered_json doc;

  ordered_json params;
  for (const auto& [name, field] : param_fields_ordered()) {
    params[name] = config.params.*field;
  }
  doc["params"] = params;

  doc["integrator"] = {{"step_size", config.integrator.step_size},
                       {"t_max", config.integrator.t_max},
                       {"convergence_eps", config.integrator.convergence_eps},
                       {"vertex_snap_eps", config.integrator.vertex_snap_eps},
                       {"record_every", config.integrator.record_every}};

  ordered_json initial;
  switch (config.initial_states.mode) {
    case InitialStates::Mode::Explicit: {
      ordered_json states = ordered_json::array();
      for (const auto& s : config.initial_states.states) {
        states.push_back({s.x, s.y, s.z});
      }
      initial["explicit"] = states;
      break;
    }
    case InitialStates::Mode::Grid:
      initial["grid"] = {{"per_axis", config.initial_states.per_axis},
                         {"margin", config.initial_states.margin}};
      break;
    case InitialStates::Mode::Random:
      initial["random"] = {{"n", config.initial_states.n},
                           {"seed", config.initial_states.seed}};
      break;
  }
  doc["initial_states"] = initial;

  doc["basins"] = {{"n_samples", config.basins.n_samples},
                   {"seed", config.basins.seed}};

  if (config.sweep) {
    ordered_json axes;
    for (const auto& [name, axis] : config.sweep->axes) {
      axes[name] = {{"min", axis.min}, {"max", axis.max},
                    {"steps", axis.steps}};
    }
    doc["sweep"] = {{"axes", axes},
                    {"basin_samples", config.sweep->basin_samples},
                    {"basin_seed", config.sweep->basin_seed}};
  }

  ordered_json formats = ordered_json::array();
  if (config.output.csv) formats.push_back("csv");
  if (config.output.json) formats.push_back("json");
  if (config.output.svg) formats.push_back("svg");
  doc["output"] = {{"dir", config.output.dir}, {"formats", formats}};
  return doc;
}

void apply_overrides(ExperimentConfig& config,
                     const std::optional<std::string>& out_dir,
                     const std::optional<std::string>& formats,
                     const std::optional<std::uint64_t>& seed) {
  if (out_dir) config.output.dir = *out_dir;
  if (formats) {
    OutputSpec spec = config.output;
    spec.csv = spec.json = spec.svg = false;
    std::stringstream stream(*formats);
    std::string token;
    bool any = false;
    while (std::getline(stream, token, ',')) {
      if (token == "csv") {
        spec.csv = true;
      } else if (token == "json") {
        spec.json = true;
      } else if (token == "svg") {
        spec.svg = true;
      } else if (!token.empty()) {
        fail(ConfigFault::Usage,
             "--format: unknown format \"" + token +
                 "\" (expected a comma-separated subset of csv,json,svg)");
      }
      any = any || !token.empty();
    }
    if (!any) {
      fail(ConfigFault::Usage, "--format requires at least one format");
    }
    config.output = spec;
  }
  if (seed) {
    // One experiment seed: it steers every seeded stage of the run.
    config.basins.seed = *seed;
    config.initial_states.seed = *seed;
    if (config.sweep) config.sweep->basin_seed = *seed;
  }
}

}  // namespace scfgame::cli
