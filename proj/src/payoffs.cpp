#include "scfgame/payoffs.hpp"

#include <cmath>

namespace scfgame {

PayoffTriple pure_payoffs(const ModelParams& p, const PureProfile& profile) {
  const double f = profile.sme_finances ? 1.0 : 0.0;
  const double g = profile.core_guarantees ? 1.0 : 0.0;
  const double c = profile.fi_cooperates ? 1.0 : 0.0;

  PayoffTriple u;
  u.sme = p.R1 + f * (g * c * p.sme_round_gain() - (p.C1 - p.m1));
  u.core = p.R2 + g * (f * c * p.core_round_gain() - (p.C2 - p.m2));
  u.fi = p.R3 + c * (f * g * p.fi_round_gain() - (p.C3 - p.m3));
  return u;
}

ExpectedPayoffs expected_payoffs(const ModelParams& p,
                                 const StrategyState& s) {
  ExpectedPayoffs e;
  e.sme_accept = p.R1 - p.C1 + p.m1 + s.y * s.z * p.sme_round_gain();
  e.sme_decline = p.R1;
  e.sme_mean = s.x * e.sme_accept + (1.0 - s.x) * e.sme_decline;

  e.core_guarantee = p.R2 - p.C2 + p.m2 + s.x * s.z * p.core_round_gain();
  e.core_decline = p.R2;
  e.core_mean = s.y * e.core_guarantee + (1.0 - s.y) * e.core_decline;

  e.fi_cooperate = p.R3 - p.C3 + p.m3 + s.x * s.y * p.fi_round_gain();
  e.fi_decline = p.R3;
  e.fi_mean = s.z * e.fi_cooperate + (1.0 - s.z) * e.fi_decline;
  return e;
}

AdvantageTriple strategy_advantage(const ModelParams& p,
                                   const StrategyState& s) {
  AdvantageTriple adv;
  adv.sme = s.y * s.z * p.sme_round_gain() - p.C1 + p.m1;
  adv.core = s.x * s.z * p.core_round_gain() - p.C2 + p.m2;
  adv.fi = s.x * s.y * p.fi_round_gain() - p.C3 + p.m3;
  return adv;
}

double Velocity::norm() const {
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Velocity replicator_field(const ModelParams& p, const StrategyState& s) {
  const AdvantageTriple adv = strategy_advantage(p, s);
  Velocity v;
  v.dx = s.x * (1.0 - s.x) * adv.sme;
  v.dy = s.y * (1.0 - s.y) * adv.core;
  v.dz = s.z * (1.0 - s.z) * adv.fi;
  return v;
}

}  // namespace scfgame
