#ifndef SCFGAME_STABILITY_HPP
#define SCFGAME_STABILITY_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "scfgame/params.hpp"
#include "scfgame/payoffs.hpp"

namespace scfgame {

enum class EquilibriumKind { Vertex, Interior, FaceOrEdge };

const char* to_string(EquilibriumKind kind);

struct Equilibrium {
  StrategyState point;
  EquilibriumKind kind = EquilibriumKind::Vertex;
  int vertex_index = 0;  // 1..8 for vertices, 0 otherwise

  // Builds an equilibrium record for an arbitrary fixed point, deriving
  // the kind (and vertex index) from the coordinates.
  static Equilibrium at(const StrategyState& point);
};

// The cube vertices in the conventional order E1(0,0,0), E2(1,0,0),
// E3(0,1,0), E4(0,0,1), E5(0,1,1), E6(1,0,1), E7(1,1,0), E8(1,1,1).
const std::array<StrategyState, 8>& cube_vertices();

// Coordinates of the interior simultaneous root of the three replicator
// brackets, if the closed form is well defined. Validity requires the
// three bracket ratios to be finite and positive and every coordinate to
// land strictly inside (0,1).
struct InteriorSolution {
  bool valid = false;
  StrategyState point;
};

InteriorSolution interior_fixed_point(const ModelParams& params);

// The 8 cube vertices, plus the interior fixed point whenever its closed
// form lies strictly inside the cube. Every returned point is certified
// by substitution (replicator field norm < 1e-9).
std::vector<Equilibrium> enumerate_equilibria(const ModelParams& params);

struct JacobianMatrix {
  std::array<std::array<double, 3>, 3> a{};

  double operator()(int i, int j) const { return a[i][j]; }
  double& operator()(int i, int j) { return a[i][j]; }
  double frobenius_norm() const;
  bool is_diagonal() const;  // off-diagonals exactly zero
};

// Analytical Jacobian of the replicator field at a state.
JacobianMatrix jacobian(const ModelParams& params, const StrategyState& state);

// Eigenvalues of a real 3x3 matrix via its characteristic cubic, Newton
// polished. Diagonal matrices short-circuit to their diagonal entries
// exactly. General results are sorted by (real, imag).
std::array<std::complex<double>, 3> eigenvalues(const JacobianMatrix& m);

// Residual |det(M - lambda*I)| used to certify an eigenvalue.
double eigen_residual(const JacobianMatrix& m, std::complex<double> lambda);

enum class StabilityKind {
  Ess,            // all eigenvalue real parts < 0
  Unstable,       // all eigenvalue real parts > 0
  Saddle,         // mixed signs, none within tolerance of 0
  NonHyperbolic,  // some real part within tolerance of 0
};

const char* to_string(StabilityKind kind);

struct StabilityClass {
  StabilityKind kind = StabilityKind::NonHyperbolic;
  std::array<std::complex<double>, 3> eigenvalues{};
  double tol = 1e-9;
};

constexpr double kDefaultHyperbolicTol = 1e-9;

StabilityClass classify(const ModelParams& params, const Equilibrium& eq,
                        double tol = kDefaultHyperbolicTol);

// One of the three inequalities that make the all-cooperate vertex E8 an
// ESS; margin = lhs - rhs, so satisfied <=> margin > 0.
struct EssCondition {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = false;
  std::string note;  // set where the implemented form departs from a quoted one
};

struct EssConditionReport {
  std::array<EssCondition, 3> conditions;
  std::string model_tag;  // "baseline" or "blockchain"

  bool all_satisfied() const;
};

// Evaluates the three E8 ESS conditions with the current cost reductions.
// With m1 = m2 = m3 = 0 the report is tagged "baseline" and prints the
// pre-blockchain condition forms.
EssConditionReport ess_conditions(const ModelParams& params);

class ComparisonDegenerate : public std::invalid_argument {
 public:
  ComparisonDegenerate()
      : std::invalid_argument(
            "nothing to compare: all cost reductions are zero, the "
            "blockchain model coincides with the baseline") {}
};

struct ModelComparison {
  EssConditionReport baseline;    // same parameters with m1 = m2 = m3 = 0
  EssConditionReport blockchain;  // cost reductions as given
  std::array<double, 3> margin_shifts{};  // blockchain - baseline, per condition
  bool baseline_e8_ess = false;
  bool blockchain_e8_ess = false;
  bool pareto_flag = false;  // every margin at least as large, strictly where m_i > 0
};

// Side-by-side baseline vs blockchain E8 condition report. Requires at
// least one positive cost reduction; throws ComparisonDegenerate otherwise.
ModelComparison compare_models(const ModelParams& params);

}  // namespace scfgame

#endif  // SCFGAME_STABILITY_HPP
