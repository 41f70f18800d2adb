#include "scfgame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scfgame {

namespace {

StrategyState axpy(const StrategyState& s, double h, const Velocity& v) {
  return {s.x + h * v.dx, s.y + h * v.dy, s.z + h * v.dz};
}

bool finite(const StrategyState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z);
}

double outside_by(double v) {
  if (v < 0.0) return -v;
  if (v > 1.0) return v - 1.0;
  return 0.0;
}

// Distance outside the unit cube, max over coordinates.
double excursion_of(const StrategyState& s) {
  return std::max({outside_by(s.x), outside_by(s.y), outside_by(s.z)});
}

StrategyState clamped(const StrategyState& s) {
  return {std::clamp(s.x, 0.0, 1.0), std::clamp(s.y, 0.0, 1.0),
          std::clamp(s.z, 0.0, 1.0)};
}

StrategyState rk4_raw(const ModelParams& p, const StrategyState& s, double h) {
  const Velocity k1 = replicator_field(p, s);
  const Velocity k2 = replicator_field(p, axpy(s, h / 2.0, k1));
  const Velocity k3 = replicator_field(p, axpy(s, h / 2.0, k2));
  const Velocity k4 = replicator_field(p, axpy(s, h, k3));
  const double w = h / 6.0;
  return {s.x + w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          s.y + w * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
          s.z + w * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz)};
}

// Nearest cube vertex and the distance to it.
std::pair<StrategyState, double> nearest_vertex(const StrategyState& s) {
  const StrategyState vertex{s.x < 0.5 ? 0.0 : 1.0, s.y < 0.5 ? 0.0 : 1.0,
                             s.z < 0.5 ? 0.0 : 1.0};
  return {vertex, distance(s, vertex)};
}

}  // namespace

void validate_config(const IntegratorConfig& config) {
  std::ostringstream issues;
  if (!(config.step_size > 0.0)) issues << " step_size must be > 0;";
  if (!(config.t_max > 0.0)) issues << " t_max must be > 0;";
  if (!(config.convergence_eps > 0.0)) issues << " convergence_eps must be > 0;";
  if (!(config.vertex_snap_eps > 0.0)) issues << " vertex_snap_eps must be > 0;";
  if (config.record_every < 1) issues << " record_every must be >= 1;";
  if (config.step_size > 0.0 && config.t_max > 0.0 &&
      !(config.t_max / config.step_size < 1e9)) {
    issues << " t_max / step_size must stay below 1e9 steps;";
  }
  const std::string text = issues.str();
  if (!text.empty()) {
    throw std::invalid_argument("invalid integrator config:" + text);
  }
}

StrategyState step(const ModelParams& params, const StrategyState& state,
                   double h, double* excursion) {
  const StrategyState raw = rk4_raw(params, state, h);
  if (!finite(raw)) throw NonFiniteState();
  if (excursion != nullptr) *excursion = excursion_of(raw);
  return clamped(raw);
}

Trajectory integrate(const ModelParams& params, const StrategyState& initial,
                     const IntegratorConfig& config) {
  validate_config(config);
  if (!initial.in_cube()) {
    throw std::invalid_argument("initial state outside the unit cube");
  }

  Trajectory traj;
  traj.params_id = params.fingerprint();
  traj.samples.push_back({0.0, initial});

  StrategyState state = initial;
  const double h = config.step_size;
  const auto steps_cap = static_cast<std::size_t>(std::ceil(config.t_max / h));

  auto finish_converged = [&](double t, const StrategyState& s) {
    traj.terminal = TerminalKind::Converged;
    const auto [vertex, dist] = nearest_vertex(s);
    traj.attractor = dist <= config.vertex_snap_eps ? vertex : s;
    if (traj.samples.back().t < t) traj.samples.push_back({t, s});
  };

  if (replicator_field(params, state).norm() < config.convergence_eps) {
    finish_converged(0.0, state);
    return traj;
  }

  for (std::size_t i = 1; i <= steps_cap; ++i) {
    const double t = static_cast<double>(i) * h;
    const StrategyState raw = rk4_raw(params, state, h);
    if (!finite(raw)) throw NonFiniteState(t);
    traj.max_excursion = std::max(traj.max_excursion, excursion_of(raw));
    state = clamped(raw);
    traj.steps = i;

    if (i % static_cast<std::size_t>(config.record_every) == 0) {
      traj.samples.push_back({t, state});
    }
    if (replicator_field(params, state).norm() < config.convergence_eps) {
      finish_converged(t, state);
      return traj;
    }
  }

  traj.terminal = TerminalKind::MaxTimeReached;
  const double t_final = static_cast<double>(traj.steps) * h;
  if (traj.samples.back().t < t_final) traj.samples.push_back({t_final, state});
  return traj;
}

std::size_t BasinReport::count_for(const StrategyState& attractor) const {
  const auto it = attractor_counts.find({attractor.x, attractor.y, attractor.z});
  return it == attractor_counts.end() ? 0 : it->second;
}

namespace {

// Attractor key quantized to a 1e-6 grid so that nearby raw terminal
// points aggregate; vertex coordinates are unaffected.
std::array<double, 3> attractor_key(const StrategyState& s) {
  auto q = [](double v) { return std::round(v * 1e6) / 1e6; };
  return {q(s.x), q(s.y), q(s.z)};
}

}  // namespace

BasinReport sample_basins(const ModelParams& params, std::size_t n_samples,
                          std::uint64_t seed, const IntegratorConfig& config) {
  if (n_samples < 1) {
    throw std::invalid_argument("sample_basins requires n_samples >= 1");
  }
  validate_config(config);

  UniformOpen01 rng(seed);
  std::vector<StrategyState> initials;
  initials.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    initials.push_back(rng.next_state());
  }

  BasinReport report;
  report.total_samples = n_samples;
  report.seed = seed;
  for (const auto& initial : initials) {
    const Trajectory traj = integrate(params, initial, config);
    if (traj.converged()) {
      ++report.attractor_counts[attractor_key(traj.attractor)];
    } else {
      ++report.unresolved;
    }
  }
  return report;
}

}  // namespace scfgame
