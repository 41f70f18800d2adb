#ifndef SCFGAME_PAYOFFS_HPP
#define SCFGAME_PAYOFFS_HPP

#include "scfgame/params.hpp"

namespace scfgame {

// Payoffs for one cell of the 2x2x2 pure-strategy table. Each player pays
// its (cost - reduction) whenever its own action is chosen, independent of
// the other players; the round gains require the full tripartite match
// except for the SME, whose gain needs only the guarantee and cooperation.
PayoffTriple pure_payoffs(const ModelParams& params, const PureProfile& profile);

// Per-strategy and population-average expected payoffs at a mixed state.
struct ExpectedPayoffs {
  double sme_accept = 0.0;     // SME plays "accept financing"
  double sme_decline = 0.0;    // SME plays "forgo financing"
  double sme_mean = 0.0;
  double core_guarantee = 0.0; // core enterprise plays "provide guarantee"
  double core_decline = 0.0;   // core enterprise plays "refuse guarantee"
  double core_mean = 0.0;
  double fi_cooperate = 0.0;   // financial institution plays "cooperate"
  double fi_decline = 0.0;     // financial institution plays "not cooperate"
  double fi_mean = 0.0;
};

ExpectedPayoffs expected_payoffs(const ModelParams& params,
                                 const StrategyState& state);

// Payoff advantage of each population's active strategy over its passive
// one: the bracket of the corresponding replicator equation.
struct AdvantageTriple {
  double sme = 0.0;
  double core = 0.0;
  double fi = 0.0;
};

AdvantageTriple strategy_advantage(const ModelParams& params,
                                   const StrategyState& state);

struct Velocity {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  double norm() const;
};

// Replicator vector field (dx/dt, dy/dt, dz/dt). Each component carries a
// share*(1-share) factor, so the field vanishes identically on the faces
// of the unit cube.
Velocity replicator_field(const ModelParams& params, const StrategyState& state);

}  // namespace scfgame

#endif  // SCFGAME_PAYOFFS_HPP
