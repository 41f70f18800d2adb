#ifndef SCFGAME_PARAMS_HPP
#define SCFGAME_PARAMS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace scfgame {

// All scalar parameters of the tripartite financing game. Currency-valued
// fields share one consistent unit; interest terms (I1, I2) are amounts,
// not percentage rates.
struct ModelParams {
  double R1 = 0.0;  // SME baseline payoff per round
  double R2 = 0.0;  // core-enterprise baseline payoff per round
  double R3 = 0.0;  // financial-institution baseline payoff per round
  double C1 = 0.0;  // SME search/collateral cost when financing
  double C2 = 0.0;  // core-enterprise assessment cost when guaranteeing
  double C3 = 0.0;  // financial-institution assessment+supervision cost
  double m1 = 0.0;  // on-chain cost reduction for the SME
  double m2 = 0.0;  // on-chain cost reduction for the core enterprise
  double m3 = 0.0;  // on-chain cost reduction for the financial institution
  double r = 0.0;     // SME gross gain from a completed financing round
  double theta = 0.0; // SME share of the repayment burden (K + I1), in [0,1]
  double K = 0.0;     // principal/collateral component of the repayment
  double I1 = 0.0;    // interest paid on the SME-facing loan
  double I2 = 0.0;    // repayment received by the financial institution
  double S = 0.0;     // core-enterprise guarantee-service income

  // Net gain each player realizes only when all three actions line up.
  double sme_round_gain() const { return r - theta * (K + I1); }
  double core_round_gain() const {
    return I1 - I2 + S - (1.0 - theta) * (K + I1);
  }
  double fi_round_gain() const { return I2; }

  // Stable 64-bit identity of the parameter set (FNV-1a over field bytes).
  std::uint64_t fingerprint() const;
};

// Field name -> member mapping, ordered by name; shared by config parsing
// and sweep/report serialization.
using ParamField = double ModelParams::*;
const std::map<std::string, ParamField>& param_fields();

// The fields in declaration order (R1..R3, C1..C3, m1..m3, r, theta, K,
// I1, I2, S), for column-ordered output.
const std::vector<std::pair<std::string, ParamField>>& param_fields_ordered();

enum class ParamFault {
  ThetaOutOfRange,
  NegativeCost,
  ReductionExceedsCost,
};

const char* to_string(ParamFault fault);

struct ValidationIssue {
  ParamFault fault;
  std::string field;   // the offending ModelParams field
  std::string message;
};

// Checks every ModelParams invariant and reports all violations, not just
// the first. An empty result means the parameters are valid.
std::vector<ValidationIssue> validate_params(const ModelParams& params);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// Returns params unchanged if valid, otherwise throws ValidationError
// carrying the complete issue list.
ModelParams validated(const ModelParams& params);

// Mixed-strategy point: population shares of "accept financing",
// "provide guarantee" and "cooperate", each in [0,1].
struct StrategyState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool in_cube() const {
    return x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0 && z >= 0.0 &&
           z <= 1.0;
  }
};

double distance(const StrategyState& a, const StrategyState& b);

struct PureProfile {
  bool sme_finances = false;
  bool core_guarantees = false;
  bool fi_cooperates = false;
};

struct PayoffTriple {
  double sme = 0.0;
  double core = 0.0;
  double fi = 0.0;
};

}  // namespace scfgame

#endif  // SCFGAME_PARAMS_HPP
