#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "gridgame/descriptor_system.hpp"
#include "gridgame/integrator.hpp"
#include "gridgame/waveform.hpp"

namespace gridgame {

/// State attack: the shared waveform v(t) is injected into every listed
/// state, E x' = A x + b v with b the sum of the attacked unit vectors.
struct AttackScenario {
  std::vector<int> states;  // attacked state indices
  Waveform waveform;
  double horizon = 5.0;
  double step = 1e-3;
};

struct DeviationTrajectory {
  Grid grid;
  Mat states;  // n x nodes, deviations from the operating point
  /// max |A x + b v| over algebraic rows and nodes: the trapezoidal scheme
  /// keeps it at roundoff whenever the attack starts consistently (v = 0 on
  /// algebraic rows at t = 0)
  double max_algebraic_residual = 0.0;
  std::string scheme = "implicit-trapezoidal";
};

/// Deviation response from rest. Throws on bad indices, nonpositive
/// horizon/step, or a singular step matrix.
DeviationTrajectory integrate_attacked(const DescriptorSystem& sys, const AttackScenario& attack);

/// Entry (observed, attacked) of (sE - A)^{-1} by Cramer's rule: the signed
/// minor over the full pencil determinant. PoleEvaluation when s sits on (or
/// numerically near) a pencil eigenvalue.
std::complex<double> transfer_deviation(const DescriptorSystem& sys, int attacked, int observed,
                                        std::complex<double> s);

/// Running cost integral of a single-state attack: cumulative trapezoidal
/// quadrature of w(t) = sum_i cost_i |x_i(t)| on the integration grid.
/// evaluate() interpolates the piecewise-linear integrand inside a cell, so
/// windows need not align with grid nodes.
struct CostProfile {
  Grid grid;
  Vec integrand;   // w at each node
  Vec cumulative;  // integral of w from 0 to each node

  /// Integral over [0, t]; WindowExceedsHorizon beyond the grid.
  [[nodiscard]] double evaluate(double t) const;
};

CostProfile cost_profile(const DescriptorSystem& sys, int attacked, const Waveform& waveform,
                         double horizon, double step);

/// Power cost deviation of a multi-state attack with per-state integration
/// windows (windows[k] applies to attack.states[k]): by linearity each
/// attacked state is simulated alone and its cost integrated over its own
/// window. The empty attack costs exactly zero.
struct CostBreakdown {
  double total = 0.0;
  std::vector<std::pair<int, double>> per_state;  // (state index, contribution)
};

CostBreakdown cost_deviation(const DescriptorSystem& sys, const AttackScenario& attack,
                             const std::vector<double>& windows);

/// Cumulative cost of an already-computed combined trajectory (one value per
/// grid node).
Vec running_cost(const DescriptorSystem& sys, const DeviationTrajectory& traj);

}  // namespace gridgame
