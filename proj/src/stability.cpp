#include "scfgame/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scfgame {

namespace {

constexpr double kEquilibriumCertTol = 1e-9;

bool on_unit_boundary(double v) { return v == 0.0 || v == 1.0; }
bool strictly_inside(double v) { return v > 0.0 && v < 1.0; }

// Roots of the monic cubic x^3 + a*x^2 + b*x + c = 0 (trigonometric form
// for three real roots, Cardano otherwise), before polishing.
std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c) {
  const double offset = -a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

  if (p == 0.0 && q == 0.0) {
    return {offset, offset, offset};
  }

  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double real_root = u + v + offset;
    const double re = -(u + v) / 2.0 + offset;
    const double im = std::sqrt(3.0) / 2.0 * (u - v);
    return {std::complex<double>(real_root, 0.0),
            std::complex<double>(re, im), std::complex<double>(re, -im)};
  }

  // disc <= 0 requires p < 0 (p == 0 would force q == 0, handled above).
  const double rho = std::sqrt(-p / 3.0);
  double cos_arg = 3.0 * q / (2.0 * p * rho);
  cos_arg = std::clamp(cos_arg, -1.0, 1.0);
  const double phi = std::acos(cos_arg);
  std::array<std::complex<double>, 3> roots;
  for (int k = 0; k < 3; ++k) {
    const double t =
        2.0 * rho *
        std::cos(phi / 3.0 - 2.0 * std::numbers::pi * static_cast<double>(k) / 3.0);
    roots[k] = std::complex<double>(t + offset, 0.0);
  }
  return roots;
}

std::complex<double> polish_root(std::complex<double> x, double a, double b,
                                 double c) {
  auto f = [&](std::complex<double> v) { return ((v + a) * v + b) * v + c; };
  auto df = [&](std::complex<double> v) { return (3.0 * v + 2.0 * a) * v + b; };

  std::complex<double> best = x;
  double best_abs = std::abs(f(x));
  for (int i = 0; i < 8 && best_abs > 0.0; ++i) {
    const std::complex<double> d = df(x);
    if (std::abs(d) == 0.0) break;
    x -= f(x) / d;
    const double fx = std::abs(f(x));
    if (fx < best_abs) {
      best = x;
      best_abs = fx;
    } else {
      break;
    }
  }
  return best;
}

bool eigen_order(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

const char* to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::Vertex:
      return "vertex";
    case EquilibriumKind::Interior:
      return "interior";
    case EquilibriumKind::FaceOrEdge:
      return "face-or-edge";
  }
  return "unknown";
}

const char* to_string(StabilityKind kind) {
  switch (kind) {
    case StabilityKind::Ess:
      return "ESS";
    case StabilityKind::Unstable:
      return "Unstable";
    case StabilityKind::Saddle:
      return "Saddle";
    case StabilityKind::NonHyperbolic:
      return "NonHyperbolic";
  }
  return "unknown";
}

const std::array<StrategyState, 8>& cube_vertices() {
  static const std::array<StrategyState, 8> vertices = {{
      {0.0, 0.0, 0.0},  // E1
      {1.0, 0.0, 0.0},  // E2
      {0.0, 1.0, 0.0},  // E3
      {0.0, 0.0, 1.0},  // E4
      {0.0, 1.0, 1.0},  // E5
      {1.0, 0.0, 1.0},  // E6
      {1.0, 1.0, 0.0},  // E7
      {1.0, 1.0, 1.0},  // E8
  }};
  return vertices;
}

Equilibrium Equilibrium::at(const StrategyState& point) {
  Equilibrium eq;
  eq.point = point;
  if (on_unit_boundary(point.x) && on_unit_boundary(point.y) &&
      on_unit_boundary(point.z)) {
    eq.kind = EquilibriumKind::Vertex;
    const auto& vertices = cube_vertices();
    for (int i = 0; i < 8; ++i) {
      if (vertices[i].x == point.x && vertices[i].y == point.y &&
          vertices[i].z == point.z) {
        eq.vertex_index = i + 1;
        break;
      }
    }
  } else if (strictly_inside(point.x) && strictly_inside(point.y) &&
             strictly_inside(point.z)) {
    eq.kind = EquilibriumKind::Interior;
  } else {
    eq.kind = EquilibriumKind::FaceOrEdge;
  }
  return eq;
}

InteriorSolution interior_fixed_point(const ModelParams& p) {
  InteriorSolution sol;
  const double a = (p.C1 - p.m1) / p.sme_round_gain();
  const double b = (p.C2 - p.m2) / p.core_round_gain();
  const double c = (p.C3 - p.m3) / p.fi_round_gain();
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) return sol;
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) return sol;

  const StrategyState point{std::sqrt(b * c / a), std::sqrt(a * c / b),
                            std::sqrt(a * b / c)};
  if (!(strictly_inside(point.x) && strictly_inside(point.y) &&
        strictly_inside(point.z))) {
    return sol;
  }
  sol.valid = true;
  sol.point = point;
  return sol;
}

std::vector<Equilibrium> enumerate_equilibria(const ModelParams& params) {
  std::vector<Equilibrium> result;
  result.reserve(9);
  for (const auto& vertex : cube_vertices()) {
    Equilibrium eq = Equilibrium::at(vertex);
    if (replicator_field(params, eq.point).norm() < kEquilibriumCertTol) {
      result.push_back(eq);
    }
  }

  const InteriorSolution interior = interior_fixed_point(params);
  if (interior.valid &&
      replicator_field(params, interior.point).norm() < kEquilibriumCertTol) {
    result.push_back(Equilibrium::at(interior.point));
  }
  return result;
}

double JacobianMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& row : a) {
    for (double v : row) sum += v * v;
  }
  return std::sqrt(sum);
}

bool JacobianMatrix::is_diagonal() const {
  return a[0][1] == 0.0 && a[0][2] == 0.0 && a[1][0] == 0.0 &&
         a[1][2] == 0.0 && a[2][0] == 0.0 && a[2][1] == 0.0;
}

JacobianMatrix jacobian(const ModelParams& p, const StrategyState& s) {
  const AdvantageTriple adv = strategy_advantage(p, s);
  const double t1 = p.sme_round_gain();
  const double t2 = p.core_round_gain();
  const double t3 = p.fi_round_gain();
  const double gx = s.x * (1.0 - s.x);
  const double gy = s.y * (1.0 - s.y);
  const double gz = s.z * (1.0 - s.z);

  JacobianMatrix j;
  j(0, 0) = (1.0 - 2.0 * s.x) * adv.sme;
  j(0, 1) = gx * s.z * t1;
  j(0, 2) = gx * s.y * t1;
  j(1, 0) = gy * s.z * t2;
  j(1, 1) = (1.0 - 2.0 * s.y) * adv.core;
  j(1, 2) = gy * s.x * t2;
  j(2, 0) = gz * s.y * t3;
  j(2, 1) = gz * s.x * t3;
  j(2, 2) = (1.0 - 2.0 * s.z) * adv.fi;
  return j;
}

std::array<std::complex<double>, 3> eigenvalues(const JacobianMatrix& m) {
  if (m.is_diagonal()) {
    return {std::complex<double>(m(0, 0), 0.0),
            std::complex<double>(m(1, 1), 0.0),
            std::complex<double>(m(2, 2), 0.0)};
  }

  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) scale = std::max(scale, std::abs(m(i, k)));
  }
  if (scale == 0.0) {
    return {std::complex<double>(0.0), std::complex<double>(0.0),
            std::complex<double>(0.0)};
  }

  JacobianMatrix n = m;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) n(i, k) /= scale;
  }

  const double tr = n(0, 0) + n(1, 1) + n(2, 2);
  const double minor_sum = n(1, 1) * n(2, 2) - n(1, 2) * n(2, 1) +
                           n(0, 0) * n(2, 2) - n(0, 2) * n(2, 0) +
                           n(0, 0) * n(1, 1) - n(0, 1) * n(1, 0);
  const double det = n(0, 0) * (n(1, 1) * n(2, 2) - n(1, 2) * n(2, 1)) -
                     n(0, 1) * (n(1, 0) * n(2, 2) - n(1, 2) * n(2, 0)) +
                     n(0, 2) * (n(1, 0) * n(2, 1) - n(1, 1) * n(2, 0));

  // characteristic polynomial: x^3 - tr*x^2 + minor_sum*x - det
  const double a = -tr;
  const double b = minor_sum;
  const double c = -det;

  auto roots = cubic_roots(a, b, c);
  for (auto& root : roots) root = polish_root(root, a, b, c) * scale;
  std::sort(roots.begin(), roots.end(), eigen_order);
  return roots;
}

double eigen_residual(const JacobianMatrix& m, std::complex<double> lambda) {
  std::array<std::array<std::complex<double>, 3>, 3> s;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      s[i][k] = std::complex<double>(m(i, k), 0.0);
      if (i == k) s[i][k] -= lambda;
    }
  }
  const std::complex<double> det =
      s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
      s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
      s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
  return std::abs(det);
}

StabilityClass classify(const ModelParams& params, const Equilibrium& eq,
                        double tol) {
  StabilityClass result;
  result.tol = tol;
  result.eigenvalues = eigenvalues(jacobian(params, eq.point));

  bool any_near_zero = false;
  bool all_negative = true;
  bool all_positive = true;
  for (const auto& lambda : result.eigenvalues) {
    const double re = lambda.real();
    if (std::abs(re) <= tol) any_near_zero = true;
    if (re >= 0.0) all_negative = false;
    if (re <= 0.0) all_positive = false;
  }

  if (any_near_zero) {
    result.kind = StabilityKind::NonHyperbolic;
  } else if (all_negative) {
    result.kind = StabilityKind::Ess;
  } else if (all_positive) {
    result.kind = StabilityKind::Unstable;
  } else {
    result.kind = StabilityKind::Saddle;
  }
  return result;
}

bool EssConditionReport::all_satisfied() const {
  return conditions[0].satisfied && conditions[1].satisfied &&
         conditions[2].satisfied;
}

EssConditionReport ess_conditions(const ModelParams& p) {
  const bool baseline = p.m1 == 0.0 && p.m2 == 0.0 && p.m3 == 0.0;
  const double burden = p.theta * (p.K + p.I1);

  EssConditionReport report;
  report.model_tag = baseline ? "baseline" : "blockchain";

  EssCondition& a1 = report.conditions[0];
  a1.label = baseline ? "r > C1 + theta*(I1 + K)"
                      : "r + m1 > C1 + theta*(I1 + K)";
  a1.lhs = p.r + p.m1;
  a1.rhs = p.C1 + burden;
  a1.note =
      "threshold derived from the E8 Jacobian entry; the sometimes-quoted "
      "constant-1 form (r > 1 + theta*(I1 + K)) does not follow from the "
      "dynamics and is not used";

  EssCondition& a2 = report.conditions[1];
  a2.label = baseline ? "S + theta*(I1 + K) > I2 + K + C2"
                      : "S + theta*(I1 + K) + m2 > I2 + K + C2";
  a2.lhs = p.S + burden + p.m2;
  a2.rhs = p.I2 + p.K + p.C2;

  EssCondition& a3 = report.conditions[2];
  a3.label = baseline ? "I2 > C3" : "I2 + m3 > C3";
  a3.lhs = p.I2 + p.m3;
  a3.rhs = p.C3;

  for (auto& cond : report.conditions) {
    cond.margin = cond.lhs - cond.rhs;
    cond.satisfied = cond.margin > 0.0;
  }
  return report;
}

ModelComparison compare_models(const ModelParams& params) {
  if (params.m1 == 0.0 && params.m2 == 0.0 && params.m3 == 0.0) {
    throw ComparisonDegenerate();
  }

  ModelParams stripped = params;
  stripped.m1 = 0.0;
  stripped.m2 = 0.0;
  stripped.m3 = 0.0;

  ModelComparison cmp;
  cmp.baseline = ess_conditions(stripped);
  cmp.blockchain = ess_conditions(params);
  cmp.baseline_e8_ess = cmp.baseline.all_satisfied();
  cmp.blockchain_e8_ess = cmp.blockchain.all_satisfied();

  const double reductions[3] = {params.m1, params.m2, params.m3};
  cmp.pareto_flag = true;
  for (int i = 0; i < 3; ++i) {
    cmp.margin_shifts[i] =
        cmp.blockchain.conditions[i].margin - cmp.baseline.conditions[i].margin;
    if (cmp.margin_shifts[i] < 0.0) cmp.pareto_flag = false;
    if (reductions[i] > 0.0 && !(cmp.margin_shifts[i] > 0.0)) {
      cmp.pareto_flag = false;
    }
  }
  return cmp;
}

}  // namespace scfgame
