#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "scfgame/presets.hpp"
#include "scfgame/stability.hpp"
#include "support.hpp"

using namespace scfgame;
using testsupport::Rng;
using testsupport::rel_err;

namespace {

bool eigen_order(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Independent oracle: dense eigensolver on the matrix itself, no
// characteristic polynomial involved.
std::array<std::complex<double>, 3> eigen_oracle(const JacobianMatrix& m) {
  Eigen::Matrix3d em;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) em(i, k) = m(i, k);
  }
  Eigen::EigenSolver<Eigen::Matrix3d> solver(em, false);
  std::array<std::complex<double>, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end(), eigen_order);
  return out;
}

const Equilibrium kE8 = Equilibrium::at({1.0, 1.0, 1.0});

}  // namespace

TEST_CASE("jacobian at the origin is diag(m_i - C_i)") {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = rng.params();
    const JacobianMatrix j = jacobian(p, {0.0, 0.0, 0.0});
    CHECK(j.is_diagonal());
    CHECK(j(0, 0) == p.m1 - p.C1);
    CHECK(j(1, 1) == p.m2 - p.C2);
    CHECK(j(2, 2) == p.m3 - p.C3);
  }
}

TEST_CASE("jacobian at the all-cooperate vertex negates the brackets") {
  Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = rng.params();
    const JacobianMatrix j = jacobian(p, {1.0, 1.0, 1.0});
    CHECK(j.is_diagonal());
    const AdvantageTriple adv = strategy_advantage(p, {1.0, 1.0, 1.0});
    CHECK(j(0, 0) == -adv.sme);
    CHECK(j(1, 1) == -adv.core);
    CHECK(j(2, 2) == -adv.fi);
  }
}

TEST_CASE("jacobian off-diagonals vanish exactly at every vertex") {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = rng.params();
    for (const auto& vertex : cube_vertices()) {
      CHECK(jacobian(p, vertex).is_diagonal());
    }
  }
}

TEST_CASE("jacobian midpoint cross-derivative") {
  const ModelParams p = preset_bistable();
  const JacobianMatrix j = jacobian(p, {0.5, 0.5, 0.5});
  CHECK(j(0, 1) ==
        doctest::Approx(0.25 * 0.5 * p.sme_round_gain()).epsilon(1e-14));
}

TEST_CASE("jacobian matches central finite differences") {
  Rng rng(24);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = rng.params();
    const StrategyState s = rng.state();
    const JacobianMatrix analytical = jacobian(p, s);
    const JacobianMatrix fd = testsupport::fd_jacobian(p, s);
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) {
        worst = std::max(worst, rel_err(analytical(row, col), fd(row, col)));
      }
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("eigenvalues of a diagonal matrix are its entries, exactly") {
  JacobianMatrix m;
  m(0, 0) = -1.0;
  m(1, 1) = -2.0;
  m(2, 2) = -3.0;
  const auto lambdas = eigenvalues(m);
  CHECK(lambdas[0] == std::complex<double>(-1.0, 0.0));
  CHECK(lambdas[1] == std::complex<double>(-2.0, 0.0));
  CHECK(lambdas[2] == std::complex<double>(-3.0, 0.0));
}

TEST_CASE("eigenvalues of the zero matrix") {
  const auto lambdas = eigenvalues(JacobianMatrix{});
  for (const auto& lambda : lambdas) {
    CHECK(lambda == std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("eigenvalues: complex pair of a rotation block") {
  JacobianMatrix m;
  m(0, 1) = -1.0;
  m(1, 0) = 1.0;
  m(2, 2) = 2.0;
  const auto lambdas = eigenvalues(m);
  CHECK(lambdas[0].real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lambdas[0].imag() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(lambdas[1].real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lambdas[1].imag() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambdas[2].real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lambdas[2].imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eigenvalues: defective triple root") {
  JacobianMatrix m;
  m(0, 0) = m(1, 1) = m(2, 2) = 2.0;
  m(0, 1) = m(1, 2) = 1.0;
  const auto lambdas = eigenvalues(m);
  for (const auto& lambda : lambdas) {
    CHECK(lambda.real() == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(std::abs(lambda.imag()) < 1e-7);
  }
}

TEST_CASE("eigenvalues of random matrices match a dense-solver oracle") {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    JacobianMatrix m;
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) m(row, col) = rng.uniform(-5.0, 5.0);
    }
    const auto computed = eigenvalues(m);
    const auto expected = eigen_oracle(m);
    const double tol = 1e-7 * (1.0 + m.frobenius_norm());
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(computed[k] - expected[k]) < tol);
      CHECK(eigen_residual(m, computed[k]) < tol);
    }
  }
}

TEST_CASE("enumerate_equilibria always lists the eight vertices in order") {
  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = rng.params();
    const auto equilibria = enumerate_equilibria(p);
    REQUIRE(equilibria.size() >= 8);
    const auto& vertices = cube_vertices();
    for (int k = 0; k < 8; ++k) {
      CHECK(equilibria[k].kind == EquilibriumKind::Vertex);
      CHECK(equilibria[k].vertex_index == k + 1);
      CHECK(equilibria[k].point.x == vertices[k].x);
      CHECK(equilibria[k].point.y == vertices[k].y);
      CHECK(equilibria[k].point.z == vertices[k].z);
      CHECK(replicator_field(p, equilibria[k].point).norm() < 1e-9);
    }
  }
}

TEST_CASE("enumerate_equilibria: zero bracket denominator leaves vertices only") {
  ModelParams p = preset_bistable();
  p.I2 = 0.0;  // C3 > m3, so the cooperation bracket has no interior root
  CHECK(enumerate_equilibria(p).size() == 8);

  ModelParams q = preset_bistable();
  q.r = q.theta * (q.K + q.I1);  // degenerate financing gain
  CHECK(enumerate_equilibria(q).size() == 8);
}

TEST_CASE("enumerate_equilibria certifies the interior ninth point") {
  // preset_interior: a = 2/2.5 = 0.8, b = 2/4 = 0.5, c = 0.25/0.5 = 0.5,
  // giving (sqrt(0.3125), sqrt(0.8), sqrt(0.8)) strictly inside the cube.
  const ModelParams p = preset_interior();
  const auto equilibria = enumerate_equilibria(p);
  REQUIRE(equilibria.size() == 9);
  const Equilibrium& interior = equilibria.back();
  CHECK(interior.kind == EquilibriumKind::Interior);
  CHECK(interior.point.x == doctest::Approx(std::sqrt(0.3125)).epsilon(1e-12));
  CHECK(interior.point.y == doctest::Approx(std::sqrt(0.8)).epsilon(1e-12));
  CHECK(interior.point.z == doctest::Approx(std::sqrt(0.8)).epsilon(1e-12));
  CHECK(replicator_field(p, interior.point).norm() < 1e-9);
}

TEST_CASE("enumerate_equilibria excludes closed-form points on the boundary") {
  // preset_bistable: a = 0.8, b = 0.75, c = 0.6 puts z* exactly at 1.
  const ModelParams p = preset_bistable();
  const auto closed = testsupport::closed_form_interior(p);
  CHECK(closed.well_defined);
  CHECK(!closed.inside);
  CHECK(enumerate_equilibria(p).size() == 8);
}

TEST_CASE("classify: origin is an ESS whenever every cost exceeds its reduction") {
  Rng rng(27);
  for (int i = 0; i < 50; ++i) {
    ModelParams p = rng.params();
    p.C1 = rng.uniform(0.5, 5.0);
    p.C2 = rng.uniform(0.5, 5.0);
    p.C3 = rng.uniform(0.5, 5.0);
    p.m1 = p.C1 * rng.uniform(0.0, 0.8);
    p.m2 = p.C2 * rng.uniform(0.0, 0.8);
    p.m3 = p.C3 * rng.uniform(0.0, 0.8);
    const auto cls = classify(p, Equilibrium::at({0.0, 0.0, 0.0}));
    CHECK(cls.kind == StabilityKind::Ess);
  }
}

TEST_CASE("classify: all-cooperate vertex under the satisfied conditions") {
  const ModelParams p = preset_bistable();
  const auto cls = classify(p, kE8);
  CHECK(cls.kind == StabilityKind::Ess);
  // vertex Jacobian is diagonal, so the eigenvalues are exact
  for (const auto& lambda : cls.eigenvalues) CHECK(lambda.imag() == 0.0);
}

TEST_CASE("classify: zero eigenvalue is reported non-hyperbolic") {
  ModelParams p = preset_bistable();
  p.I2 = p.C3 - p.m3;  // cooperation bracket vanishes at the vertex
  CHECK(classify(p, kE8).kind == StabilityKind::NonHyperbolic);
}

TEST_CASE("classify: all-cooperate vertex can be fully repelling") {
  ModelParams p = preset_bistable();
  p.r = 1.0;   // financing bracket negative
  p.S = 0.0;   // guarantee bracket negative
  p.I2 = 0.2;  // cooperation bracket negative
  CHECK(classify(p, kE8).kind == StabilityKind::Unstable);
}

TEST_CASE("classify: mixed signs give a saddle") {
  ModelParams p = preset_bistable();
  p.r = 1.0;  // financing bracket negative, the other two stay positive
  CHECK(classify(p, kE8).kind == StabilityKind::Saddle);
}

TEST_CASE("classification is consistent with its stored eigenvalues") {
  Rng rng(28);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = rng.params();
    for (const auto& eq : enumerate_equilibria(p)) {
      const auto cls = classify(p, eq);
      bool any_near = false;
      bool all_neg = true;
      bool all_pos = true;
      for (const auto& lambda : cls.eigenvalues) {
        if (std::abs(lambda.real()) <= cls.tol) any_near = true;
        if (lambda.real() >= 0.0) all_neg = false;
        if (lambda.real() <= 0.0) all_pos = false;
      }
      if (any_near) {
        CHECK(cls.kind == StabilityKind::NonHyperbolic);
      } else if (all_neg) {
        CHECK(cls.kind == StabilityKind::Ess);
      } else if (all_pos) {
        CHECK(cls.kind == StabilityKind::Unstable);
      } else {
        CHECK(cls.kind == StabilityKind::Saddle);
      }
    }
  }
}

TEST_CASE("ess_conditions: frozen margins for the benchmark preset") {
  const ModelParams p = preset_bistable();
  const auto report = ess_conditions(p);
  CHECK(report.model_tag == "baseline");
  CHECK(report.conditions[0].margin == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(report.conditions[1].margin == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(report.conditions[2].margin == doctest::Approx(0.2).epsilon(1e-14));
  for (const auto& cond : report.conditions) CHECK(cond.satisfied);
  CHECK(report.all_satisfied());
}

TEST_CASE("ess_conditions: baseline labels match the classical condition forms") {
  const auto report = ess_conditions(preset_bistable());
  CHECK(report.conditions[0].label == "r > C1 + theta*(I1 + K)");
  CHECK(report.conditions[1].label == "S + theta*(I1 + K) > I2 + K + C2");
  CHECK(report.conditions[2].label == "I2 > C3");
  CHECK(!report.conditions[0].note.empty());
}

TEST_CASE("ess_conditions: reductions appear in the blockchain labels") {
  ModelParams p = preset_bistable();
  p.m1 = 0.5;
  p.m2 = 0.25;
  p.m3 = 0.1;
  const auto report = ess_conditions(p);
  CHECK(report.model_tag == "blockchain");
  CHECK(report.conditions[0].label == "r + m1 > C1 + theta*(I1 + K)");
  CHECK(report.conditions[1].label ==
        "S + theta*(I1 + K) + m2 > I2 + K + C2");
  CHECK(report.conditions[2].label == "I2 + m3 > C3");
}

TEST_CASE("each condition margin equals the negated vertex eigenvalue") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = rng.params();
    const auto report = ess_conditions(p);
    const JacobianMatrix j = jacobian(p, {1.0, 1.0, 1.0});
    for (int k = 0; k < 3; ++k) {
      CHECK(rel_err(report.conditions[k].margin, -j(k, k)) < 1e-12);
    }
  }
}

TEST_CASE("ESS classification of E8 agrees with the condition margins") {
  Rng rng(30);
  int agreements = 0;
  int ties = 0;
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = rng.params();
    const auto report = ess_conditions(p);
    const bool tie = std::any_of(
        report.conditions.begin(), report.conditions.end(),
        [](const auto& c) { return std::abs(c.margin) < 1e-9; });
    const auto cls = classify(p, kE8);
    if (tie) {
      ++ties;
      continue;
    }
    const bool margins_ok = report.all_satisfied();
    const bool is_ess = cls.kind == StabilityKind::Ess;
    CHECK(margins_ok == is_ess);
    agreements += (margins_ok == is_ess);
  }
  CHECK(agreements == 1000 - ties);
}

TEST_CASE("margins are affine in the reductions, one m each") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    ModelParams p = rng.params();
    p.m1 = p.C1 * rng.uniform(0.0, 0.4);
    p.m2 = p.C2 * rng.uniform(0.0, 0.4);
    p.m3 = p.C3 * rng.uniform(0.0, 0.4);
    const auto base = ess_conditions(p);

    ModelParams bumped = p;
    const double delta = rng.uniform(0.01, 0.5) * p.C1;
    bumped.m1 = p.m1 + std::min(delta, p.C1 - p.m1);
    const auto bump = ess_conditions(bumped);
    CHECK(bump.conditions[0].margin ==
          doctest::Approx(base.conditions[0].margin + (bumped.m1 - p.m1))
              .epsilon(1e-12));
    CHECK(bump.conditions[1].margin == base.conditions[1].margin);
    CHECK(bump.conditions[2].margin == base.conditions[2].margin);
  }
}

TEST_CASE("compare_models: margins shift by exactly the reductions") {
  ModelParams p = preset_bistable();
  p.m1 = 1.0;
  p.m2 = 1.0;
  p.m3 = 0.1;
  const auto cmp = compare_models(p);
  CHECK(cmp.baseline.model_tag == "baseline");
  CHECK(cmp.blockchain.model_tag == "blockchain");
  CHECK(cmp.margin_shifts[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cmp.margin_shifts[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cmp.margin_shifts[2] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(cmp.pareto_flag);
}

TEST_CASE("compare_models: a reduction can flip E8 into an ESS") {
  ModelParams p = preset_bistable();
  // baseline financing condition fails by 0.4; m1 = 0.5 repairs it
  p.r = p.C1 + p.theta * (p.K + p.I1) - 0.4;
  p.m1 = 0.5;
  const auto cmp = compare_models(p);
  CHECK(!cmp.baseline_e8_ess);
  CHECK(cmp.blockchain_e8_ess);
  CHECK(cmp.baseline.conditions[0].margin ==
        doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(cmp.blockchain.conditions[0].margin ==
        doctest::Approx(0.1).epsilon(1e-10));
  CHECK(cmp.pareto_flag);
}

TEST_CASE("compare_models refuses when every reduction is zero") {
  CHECK_THROWS_AS((void)compare_models(preset_bistable()),
                  ComparisonDegenerate);
}

TEST_CASE("vertex equilibrium set is identical with and without reductions") {
  Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    ModelParams p = rng.params();
    ModelParams stripped = p;
    stripped.m1 = stripped.m2 = stripped.m3 = 0.0;
    const auto with = enumerate_equilibria(p);
    const auto without = enumerate_equilibria(stripped);
    REQUIRE(with.size() >= 8);
    REQUIRE(without.size() >= 8);
    for (int k = 0; k < 8; ++k) {
      CHECK(with[k].point.x == without[k].point.x);
      CHECK(with[k].point.y == without[k].point.y);
      CHECK(with[k].point.z == without[k].point.z);
    }
  }
}

TEST_CASE("Equilibrium::at derives the kind from the coordinates") {
  CHECK(Equilibrium::at({0.0, 0.0, 0.0}).kind == EquilibriumKind::Vertex);
  CHECK(Equilibrium::at({0.0, 0.0, 0.0}).vertex_index == 1);
  CHECK(Equilibrium::at({1.0, 1.0, 1.0}).vertex_index == 8);
  CHECK(Equilibrium::at({0.3, 0.4, 0.5}).kind == EquilibriumKind::Interior);
  CHECK(Equilibrium::at({1.0, 0.4, 0.5}).kind == EquilibriumKind::FaceOrEdge);
}
