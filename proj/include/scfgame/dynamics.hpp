#ifndef SCFGAME_DYNAMICS_HPP
#define SCFGAME_DYNAMICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "scfgame/params.hpp"
#include "scfgame/payoffs.hpp"

namespace scfgame {

struct IntegratorConfig {
  double step_size = 0.01;
  double t_max = 500.0;
  double convergence_eps = 1e-8;   // field-norm threshold
  double vertex_snap_eps = 1e-3;   // distance for attributing a vertex
  int record_every = 10;           // sample stride
};

// Throws std::invalid_argument when a field is out of range.
void validate_config(const IntegratorConfig& config);

class NonFiniteState : public std::runtime_error {
 public:
  NonFiniteState()
      : std::runtime_error("state became non-finite (parameter pathology)") {}
  explicit NonFiniteState(double t)
      : std::runtime_error("state became non-finite at t = " +
                           std::to_string(t) + " (parameter pathology)") {}
};

struct TrajectorySample {
  double t = 0.0;
  StrategyState state;
};

enum class TerminalKind { Converged, MaxTimeReached };

struct Trajectory {
  std::uint64_t params_id = 0;
  std::vector<TrajectorySample> samples;
  TerminalKind terminal = TerminalKind::MaxTimeReached;
  StrategyState attractor;     // vertex-snapped terminal point when Converged
  double max_excursion = 0.0;  // worst pre-clamp distance outside the cube
  std::size_t steps = 0;

  const TrajectorySample& final_sample() const { return samples.back(); }
  bool converged() const { return terminal == TerminalKind::Converged; }
};

// One classical RK4 step of the replicator system followed by clamping
// into [0,1]^3. If excursion is non-null it receives the pre-clamp
// distance outside the cube. Throws NonFiniteState on NaN/inf.
StrategyState step(const ModelParams& params, const StrategyState& state,
                   double h, double* excursion = nullptr);

// Integrates until the field norm drops below convergence_eps or t_max is
// reached. The terminal point snaps to the nearest vertex when within
// vertex_snap_eps; otherwise the raw final state is reported.
Trajectory integrate(const ModelParams& params, const StrategyState& initial,
                     const IntegratorConfig& config);

struct BasinReport {
  std::map<std::array<double, 3>, std::size_t> attractor_counts;
  std::size_t total_samples = 0;
  std::size_t unresolved = 0;  // MaxTimeReached runs
  std::uint64_t seed = 0;

  std::size_t count_for(const StrategyState& attractor) const;
};

// Integrates n_samples trajectories from uniform random initial states in
// the open cube (0,1)^3 and tallies the attractors. Fully deterministic
// for a fixed (params, n_samples, seed, config).
BasinReport sample_basins(const ModelParams& params, std::size_t n_samples,
                          std::uint64_t seed, const IntegratorConfig& config);

// Uniform doubles in the open interval (0,1) from a mt19937_64 stream,
// mapped explicitly so values do not depend on the standard library's
// distribution implementation.
class UniformOpen01 {
 public:
  explicit UniformOpen01(std::uint64_t seed) : engine_(seed) {}

  double next() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1p-52;
  }

  StrategyState next_state() {
    const double x = next();
    const double y = next();
    const double z = next();
    return {x, y, z};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scfgame

#endif  // SCFGAME_DYNAMICS_HPP
