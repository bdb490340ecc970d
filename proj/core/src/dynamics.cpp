#include "gridgame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

void check_states(const DescriptorSystem& sys, const std::vector<int>& states) {
  std::set<int> seen;
  for (int s : states) {
    if (s < 0 || s >= sys.n())
      fail(Errc::InvalidScenario, "attacked state index " + std::to_string(s) + " out of range");
    if (!seen.insert(s).second)
      fail(Errc::InvalidScenario, "attacked state " + std::to_string(s) + " listed twice");
  }
}

Vec attack_direction(const DescriptorSystem& sys, const std::vector<int>& states) {
  Vec b = Vec::Zero(sys.n());
  for (int s : states) b[s] += 1.0;
  return b;
}

}  // namespace

DeviationTrajectory integrate_attacked(const DescriptorSystem& sys, const AttackScenario& attack) {
  check_states(sys, attack.states);
  DeviationTrajectory out;
  out.grid = make_grid(attack.horizon, attack.step);
  const Vec b = attack_direction(sys, attack.states);

  Mat input(sys.n(), out.grid.nodes());
  Vec v(out.grid.nodes());
  for (int k = 0; k < out.grid.nodes(); ++k) {
    v[k] = attack.waveform(out.grid.time(k));
    input.col(k) = b * v[k];
  }

  const TrapezoidalLti stepper(sys.e, sys.a, out.grid.step);
  out.states = stepper.run(Vec::Zero(sys.n()), input);

  std::vector<int> algebraic;
  for (int i = 0; i < sys.n(); ++i)
    if (sys.states[i].algebraic) algebraic.push_back(i);
  if (!algebraic.empty()) {
    const Mat residual = sys.a * out.states + input;
    for (int i : algebraic)
      out.max_algebraic_residual =
          std::max(out.max_algebraic_residual, residual.row(i).cwiseAbs().maxCoeff());
  }
  return out;
}

std::complex<double> transfer_deviation(const DescriptorSystem& sys, int attacked, int observed,
                                        std::complex<double> s) {
  const int n = sys.n();
  if (attacked < 0 || attacked >= n || observed < 0 || observed >= n)
    fail(Errc::InvalidScenario, "transfer indices out of range");
  const CMat z = s * sys.e.cast<std::complex<double>>() - sys.a.cast<std::complex<double>>();

  // Hadamard row bound spots near-pole probes without an eigensolve
  double hadamard = 1.0;
  for (int i = 0; i < n; ++i) hadamard *= z.row(i).norm();
  const std::complex<double> det = Eigen::PartialPivLU<CMat>(z).determinant();
  if (std::abs(det) <= 1e-12 * hadamard)
    fail(Errc::PoleEvaluation, "probe point is numerically on a pencil eigenvalue");

  // inverse entry (observed, attacked) = cofactor over determinant: strike
  // row `attacked`, column `observed` from z
  CMat minor(n - 1, n - 1);
  for (int r = 0, mr = 0; r < n; ++r) {
    if (r == attacked) continue;
    for (int c = 0, mc = 0; c < n; ++c) {
      if (c == observed) continue;
      minor(mr, mc) = z(r, c);
      ++mc;
    }
    ++mr;
  }
  std::complex<double> det_minor =
      n == 1 ? std::complex<double>(1.0, 0.0) : Eigen::PartialPivLU<CMat>(minor).determinant();
  const double sign = ((attacked + observed) % 2 == 0) ? 1.0 : -1.0;
  return sign * det_minor / det;
}

double CostProfile::evaluate(double t) const {
  if (t < 0.0) fail(Errc::WindowExceedsHorizon, "negative window");
  if (t > grid.horizon() + 1e-9 * std::max(1.0, grid.horizon()))
    fail(Errc::WindowExceedsHorizon,
         "window " + std::to_string(t) + " beyond profile horizon " + std::to_string(grid.horizon()));
  const double pos = std::min(t / grid.step, static_cast<double>(grid.steps));
  const auto cell = std::min(static_cast<int>(pos), grid.steps - 1);
  const double local = t - grid.time(cell);
  const double w0 = integrand[cell];
  const double slope = (integrand[cell + 1] - w0) / grid.step;
  // trapezoid of the linear interpolant over the partial cell
  return cumulative[cell] + local * w0 + 0.5 * slope * local * local;
}

CostProfile cost_profile(const DescriptorSystem& sys, int attacked, const Waveform& waveform,
                         double horizon, double step) {
  AttackScenario attack;
  attack.states = {attacked};
  attack.waveform = waveform;
  attack.horizon = horizon;
  attack.step = step;
  const DeviationTrajectory traj = integrate_attacked(sys, attack);

  CostProfile profile;
  profile.grid = traj.grid;
  profile.integrand = (sys.cost.asDiagonal() * traj.states).cwiseAbs().colwise().sum().transpose();
  profile.cumulative = Vec::Zero(traj.grid.nodes());
  for (int k = 0; k < traj.grid.steps; ++k)
    profile.cumulative[k + 1] = profile.cumulative[k] +
                                0.5 * traj.grid.step * (profile.integrand[k] + profile.integrand[k + 1]);
  return profile;
}

CostBreakdown cost_deviation(const DescriptorSystem& sys, const AttackScenario& attack,
                             const std::vector<double>& windows) {
  check_states(sys, attack.states);
  if (windows.size() != attack.states.size())
    fail(Errc::InvalidScenario, "one window per attacked state required");
  CostBreakdown out;
  for (size_t k = 0; k < attack.states.size(); ++k) {
    const double window = windows[k];
    if (!(window > 0.0)) fail(Errc::HorizonNonpositive, "window " + std::to_string(window));
    if (window > attack.horizon + 1e-9 * std::max(1.0, attack.horizon))
      fail(Errc::WindowExceedsHorizon,
           "window " + std::to_string(window) + " exceeds attack horizon " +
               std::to_string(attack.horizon));
    const CostProfile profile =
        cost_profile(sys, attack.states[k], attack.waveform, window, attack.step);
    const double value = profile.evaluate(window);
    out.per_state.emplace_back(attack.states[k], value);
    out.total += value;
  }
  return out;
}

Vec running_cost(const DescriptorSystem& sys, const DeviationTrajectory& traj) {
  const Vec w = (sys.cost.asDiagonal() * traj.states).cwiseAbs().colwise().sum().transpose();
  Vec cumulative = Vec::Zero(traj.grid.nodes());
  for (int k = 0; k < traj.grid.steps; ++k)
    cumulative[k + 1] = cumulative[k] + 0.5 * traj.grid.step * (w[k] + w[k + 1]);
  return cumulative;
}

}  // namespace gridgame
