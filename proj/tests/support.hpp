#ifndef SCFGAME_TESTS_SUPPORT_HPP
#define SCFGAME_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "scfgame/params.hpp"
#include "scfgame/payoffs.hpp"
#include "scfgame/stability.hpp"

namespace testsupport {

// Deterministic test generator; draws are engine-stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double open01() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1p-52;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * open01(); }

  std::uint64_t raw() { return engine_(); }

  // Valid random parameters: every invariant holds by construction.
  scfgame::ModelParams params() {
    scfgame::ModelParams p;
    p.R1 = uniform(0.0, 10.0);
    p.R2 = uniform(0.0, 10.0);
    p.R3 = uniform(0.0, 10.0);
    p.C1 = uniform(0.0, 5.0);
    p.C2 = uniform(0.0, 5.0);
    p.C3 = uniform(0.0, 5.0);
    p.m1 = p.C1 * uniform(0.0, 1.0);
    p.m2 = p.C2 * uniform(0.0, 1.0);
    p.m3 = p.C3 * uniform(0.0, 1.0);
    p.r = uniform(0.0, 10.0);
    p.theta = open01();
    p.K = uniform(0.0, 5.0);
    p.I1 = uniform(0.0, 2.0);
    p.I2 = uniform(0.0, 2.0);
    p.S = uniform(0.0, 8.0);
    return p;
  }

  scfgame::StrategyState state(double lo = 0.0, double hi = 1.0) {
    const double x = uniform(lo, hi);
    const double y = uniform(lo, hi);
    const double z = uniform(lo, hi);
    return {x, y, z};
  }

 private:
  std::mt19937_64 engine_;
};

// Relative error with a unit floor, the metric used for the currency-scale
// identities: |a-b| <= tol * max(1, |a|, |b|).
inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Brute-force population means: probability-weighted payoff sums over the
// 8 pure profiles. Independent route used to cross-check expected_payoffs.
struct BruteForceMeans {
  double sme = 0.0;
  double core = 0.0;
  double fi = 0.0;
};

inline BruteForceMeans brute_force_means(const scfgame::ModelParams& p,
                                         const scfgame::StrategyState& s) {
  BruteForceMeans means;
  for (int f = 0; f < 2; ++f) {
    for (int g = 0; g < 2; ++g) {
      for (int c = 0; c < 2; ++c) {
        const double prob = (f ? s.x : 1.0 - s.x) * (g ? s.y : 1.0 - s.y) *
                            (c ? s.z : 1.0 - s.z);
        const auto u = scfgame::pure_payoffs(p, {f == 1, g == 1, c == 1});
        means.sme += prob * u.sme;
        means.core += prob * u.core;
        means.fi += prob * u.fi;
      }
    }
  }
  return means;
}

// Central finite differences of the replicator field.
inline scfgame::JacobianMatrix fd_jacobian(const scfgame::ModelParams& p,
                                           const scfgame::StrategyState& s,
                                           double h = 1e-6) {
  scfgame::JacobianMatrix j;
  for (int axis = 0; axis < 3; ++axis) {
    scfgame::StrategyState hi = s;
    scfgame::StrategyState lo = s;
    (axis == 0 ? hi.x : axis == 1 ? hi.y : hi.z) += h;
    (axis == 0 ? lo.x : axis == 1 ? lo.y : lo.z) -= h;
    const auto f_hi = scfgame::replicator_field(p, hi);
    const auto f_lo = scfgame::replicator_field(p, lo);
    j(0, axis) = (f_hi.dx - f_lo.dx) / (2.0 * h);
    j(1, axis) = (f_hi.dy - f_lo.dy) / (2.0 * h);
    j(2, axis) = (f_hi.dz - f_lo.dz) / (2.0 * h);
  }
  return j;
}

// Test-side closed form for the interior fixed point: the bracket ratios
// a = (C1-m1)/T1, b = (C2-m2)/T2, c = (C3-m3)/I2 and the square-root
// coordinates, evaluated independently of the library routine.
struct ClosedFormInterior {
  bool well_defined = false;  // ratios finite and positive
  bool inside = false;        // coordinates strictly within (0,1)
  scfgame::StrategyState point;
};

inline ClosedFormInterior closed_form_interior(const scfgame::ModelParams& p) {
  ClosedFormInterior result;
  const double a = (p.C1 - p.m1) / (p.r - p.theta * (p.K + p.I1));
  const double b = (p.C2 - p.m2) /
                   (p.I1 - p.I2 + p.S - (1.0 - p.theta) * (p.K + p.I1));
  const double c = (p.C3 - p.m3) / p.I2;
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
    return result;
  }
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) return result;
  result.well_defined = true;
  result.point = {std::sqrt(b * c / a), std::sqrt(a * c / b),
                  std::sqrt(a * b / c)};
  auto open = [](double v) { return v > 0.0 && v < 1.0; };
  result.inside =
      open(result.point.x) && open(result.point.y) && open(result.point.z);
  return result;
}

}  // namespace testsupport

#endif  // SCFGAME_TESTS_SUPPORT_HPP
