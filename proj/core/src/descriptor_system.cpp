#include "gridgame/descriptor_system.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "gridgame/errors.hpp"
#include "gridgame/linearization.hpp"

namespace gridgame {

namespace {

std::string complex_text(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace

int DescriptorSystem::state_index(const std::string& label) const {
  for (int i = 0; i < n(); ++i)
    if (states[i].label == label) return i;
  return -1;
}

bool DescriptorSystem::state_electric(int i) const {
  const StateKind k = states[i].kind;
  return k == StateKind::RotorAngle || k == StateKind::RotorSpeed ||
         k == StateKind::BusAngle;
}

std::vector<int> DescriptorSystem::electric_states() const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (state_electric(i)) out.push_back(i);
  return out;
}

bool DescriptorSystem::subsystem_electric(int i) const {
  for (int s : subsystems[i])
    if (!state_electric(s)) return false;
  return true;
}

bool pencil_regular(const Mat& e, const Mat& a) {
  // a regular pencil has at most n determinant roots, so it cannot vanish at
  // all three of these (deliberately irrational) probe points
  static const std::complex<double> probes[] = {{0.6180339887498949, 0.0},
                                                {2.414213562373095, 0.0},
                                                {0.5, 1.7320508075688772}};
  const CMat ec = e.cast<std::complex<double>>();
  const CMat ac = a.cast<std::complex<double>>();
  for (const auto& s : probes) {
    Eigen::FullPivLU<CMat> lu(s * ec - ac);
    if (lu.isInvertible()) return true;
  }
  return false;
}

std::vector<std::complex<double>> finite_pencil_eigenvalues(const Mat& e, const Mat& a) {
  Eigen::GeneralizedEigenSolver<Mat> solver;
  solver.compute(a, e, false);
  if (solver.info() != Eigen::Success)
    fail(Errc::NumericalFailure, "QZ iteration on the pencil did not converge");
  const auto& alphas = solver.alphas();
  const auto& betas = solver.betas();
  double beta_scale = 0.0;
  for (int i = 0; i < betas.size(); ++i)
    beta_scale = std::max(beta_scale, std::abs(betas[i]));
  std::vector<std::complex<double>> finite;
  for (int i = 0; i < betas.size(); ++i) {
    // |beta| ~ 0 marks the infinite eigenvalues contributed by algebraic rows
    if (std::abs(betas[i]) > 1e-10 * std::max(beta_scale, 1e-100))
      finite.push_back(alphas[i] / betas[i]);
  }
  std::sort(finite.begin(), finite.end(),
            [](const std::complex<double>& l, const std::complex<double>& r) {
              if (l.real() != r.real()) return l.real() < r.real();
              return l.imag() < r.imag();
            });
  return finite;
}

DescriptorSystem assemble(const InfrastructureSpec& spec) {
  validate(spec);

  DescriptorSystem sys;
  std::map<std::string, int> delta_of, omega_of, angle_of, head_of;

  // state ordering: rotor angles, speeds (gas-fired first), bus angles
  // (compressor, treatment, other), gas heads, water heads; storages
  // precede junctions inside each fluid block
  for (const auto& g : spec.power.generators) {
    delta_of[g.id] = sys.n();
    sys.states.push_back({"delta(" + g.id + ")", g.id, StateKind::RotorAngle, false, -1});
  }
  auto push_omega = [&](const GeneratorSpec& g) {
    omega_of[g.id] = sys.n();
    sys.states.push_back({"omega(" + g.id + ")", g.id, StateKind::RotorSpeed, false, -1});
  };
  for (const auto& g : spec.power.generators)
    if (g.gas_fired) push_omega(g);
  for (const auto& g : spec.power.generators)
    if (!g.gas_fired) push_omega(g);
  for (BusKind kind : {BusKind::Compressor, BusKind::Treatment, BusKind::Other}) {
    for (const auto& b : spec.power.buses) {
      if (b.kind != kind) continue;
      angle_of[b.id] = sys.n();
      sys.states.push_back({"theta(" + b.id + ")", b.id, StateKind::BusAngle, true, -1});
    }
  }
  auto push_fluid = [&](const FluidSpec& f, StateKind kind) {
    for (const auto& s : f.storages) {
      head_of[s.id] = sys.n();
      sys.states.push_back({"h(" + s.id + ")", s.id, kind, false, -1});
    }
    for (const auto& j : f.junctions) {
      head_of[j.id] = sys.n();
      sys.states.push_back({"h(" + j.id + ")", j.id, kind, true, -1});
    }
  };
  push_fluid(spec.gas, StateKind::GasHead);
  push_fluid(spec.water, StateKind::WaterHead);

  const int n = sys.n();
  sys.e = Mat::Zero(n, n);
  sys.a = Mat::Zero(n, n);
  sys.cost = Vec::Zero(n);

  // electric block: delta' = omega and the power balance rows. A generator's
  // balance lands in its speed row (scaled by M), a bus's in its own
  // algebraic row. Branch susceptances accumulate a negated Laplacian.
  for (const auto& g : spec.power.generators) {
    const int d = delta_of[g.id];
    const int w = omega_of[g.id];
    angle_of[g.id] = d;
    sys.e(d, d) = 1.0;
    sys.a(d, w) = 1.0;
    sys.e(w, w) = g.inertia;
    sys.a(w, w) -= g.damping;
    sys.cost[d] = g.angle_cost;
    sys.cost[w] = g.speed_cost;
  }
  for (const auto& b : spec.power.buses) sys.cost[angle_of[b.id]] = b.angle_cost;

  std::map<std::string, int> balance_row;
  for (const auto& g : spec.power.generators) balance_row[g.id] = omega_of[g.id];
  for (const auto& b : spec.power.buses) balance_row[b.id] = angle_of[b.id];

  for (const auto& br : spec.power.branches) {
    const int ru = balance_row[br.from], rv = balance_row[br.to];
    const int cu = angle_of[br.from], cv = angle_of[br.to];
    sys.a(ru, cu) -= br.susceptance;
    sys.a(ru, cv) += br.susceptance;
    sys.a(rv, cv) -= br.susceptance;
    sys.a(rv, cu) += br.susceptance;
  }
  for (const auto& t : spec.power.ground_ties)
    sys.a(balance_row[t.node], angle_of[t.node]) -= t.susceptance;

  // fluid-to-power coupling, the only cross-infrastructure entries of A
  for (const auto& cp : spec.gas_couplings)
    sys.a(omega_of[cp.generator], head_of[cp.node]) += cp.gain;
  for (const auto& cp : spec.water_couplings)
    sys.a(omega_of[cp.generator], head_of[cp.node]) += cp.gain;

  // fluid blocks: each edge's linearized flow enters the net-inflow balance
  // of both endpoints; supply endpoints have zero head deviation, so their
  // column term drops and the edge grounds the neighbor instead
  auto assemble_fluid = [&](const FluidSpec& f) {
    std::map<std::string, double> head;
    for (const auto& s : f.supplies) head[s.id] = s.head;
    for (const auto& s : f.storages) {
      head[s.id] = s.head;
      const int i = head_of[s.id];
      sys.e(i, i) = s.charge_ratio;
    }
    for (const auto& j : f.junctions) head[j.id] = j.head;

    auto apply_edge = [&](const std::string& from, const std::string& to,
                          const FlowGradient& grad) {
      const auto from_state = head_of.find(from);
      const auto to_state = head_of.find(to);
      auto add = [&](int row, double sign) {
        if (from_state != head_of.end()) sys.a(row, from_state->second) += sign * grad.d_from;
        if (to_state != head_of.end()) sys.a(row, to_state->second) += sign * grad.d_to;
      };
      if (to_state != head_of.end()) add(to_state->second, +1.0);   // inflow
      if (from_state != head_of.end()) add(from_state->second, -1.0);  // outflow
    };
    auto with_edge_context = [&](const std::string& from, const std::string& to, auto&& fn) {
      try {
        return fn();
      } catch (const Error& err) {
        throw Error(err.code(),
                    std::string(err.what()) + " [edge " + from + "->" + to + "]");
      }
    };
    for (const auto& p : f.pipes) {
      const FlowGradient grad = with_edge_context(p.from, p.to, [&] {
        return pipe_gradient(f.kind, p.constant, head.at(p.from), head.at(p.to));
      });
      apply_edge(p.from, p.to, grad);
    }
    for (const auto& c : f.compressors) {
      const FlowGradient grad = with_edge_context(c.from, c.to, [&] {
        return compressor_gradient(c.power, c.k1, c.k2, c.alpha, head.at(c.from), head.at(c.to));
      });
      apply_edge(c.from, c.to, grad);
    }
  };
  assemble_fluid(spec.gas);
  assemble_fluid(spec.water);

  // partition: component ids -> their states; empty partition collapses to a
  // single block so simulation-only specs stay terse
  std::map<std::string, std::vector<int>> comp_states;
  for (int i = 0; i < n; ++i) comp_states[sys.states[i].component].push_back(i);
  std::vector<std::vector<std::string>> partition = spec.partition;
  if (partition.empty()) {
    partition.emplace_back();
    for (const auto& [id, _] : comp_states) partition.back().push_back(id);
  }
  std::set<std::string> used;
  for (const auto& block : partition) {
    if (block.empty()) fail(Errc::PartitionMismatch, "empty subsystem block");
    std::vector<int> members;
    for (const auto& id : block) {
      const auto it = comp_states.find(id);
      if (it == comp_states.end())
        fail(Errc::PartitionMismatch, "partition references unknown or stateless component '" + id + "'");
      if (!used.insert(id).second)
        fail(Errc::PartitionMismatch, "component '" + id + "' appears in more than one block");
      members.insert(members.end(), it->second.begin(), it->second.end());
    }
    std::sort(members.begin(), members.end());
    const int block_index = static_cast<int>(sys.subsystems.size());
    for (int s : members) sys.states[s].subsystem = block_index;
    sys.subsystems.push_back(std::move(members));
  }
  for (const auto& [id, _] : comp_states) {
    if (used.count(id) == 0)
      fail(Errc::PartitionMismatch, "component '" + id + "' missing from the partition");
  }

  // measured set: default everything; C holds unit selector rows in state order
  if (spec.measured.empty()) {
    sys.measured.resize(n);
    for (int i = 0; i < n; ++i) sys.measured[i] = i;
  } else {
    std::set<int> seen;
    for (const auto& label : spec.measured) {
      const int idx = sys.state_index(label);
      if (idx < 0) fail(Errc::InvalidScenario, "measured: unknown state label '" + label + "'");
      if (!seen.insert(idx).second)
        fail(Errc::InvalidScenario, "measured: duplicate state label '" + label + "'");
    }
    sys.measured.assign(seen.begin(), seen.end());
  }
  sys.c = Mat::Zero(sys.outputs(), n);
  for (int r = 0; r < sys.outputs(); ++r) sys.c(r, sys.measured[r]) = 1.0;

  // cross-block fill of the electric-row x fluid-column region
  const std::vector<int> electric = sys.electric_states();
  int fluid_count = n - static_cast<int>(electric.size());
  if (fluid_count > 0 && !electric.empty()) {
    int nonzero = 0;
    for (int r : electric)
      for (int c = 0; c < n; ++c)
        if (!sys.state_electric(c) && sys.a(r, c) != 0.0) ++nonzero;
    sys.coupling_density =
        static_cast<double>(nonzero) / (static_cast<double>(electric.size()) * fluid_count);
  }

  if (!pencil_regular(sys.e, sys.a))
    fail(Errc::IrregularPencil, "det(sE - A) vanishes at every probe point");

  sys.finite_eigenvalues = finite_pencil_eigenvalues(sys.e, sys.a);
  sys.stability_margin = -std::numeric_limits<double>::infinity();
  for (const auto& ev : sys.finite_eigenvalues)
    sys.stability_margin = std::max(sys.stability_margin, ev.real());
  if (!sys.finite_eigenvalues.empty() && sys.stability_margin >= -1e-9) {
    std::complex<double> worst = sys.finite_eigenvalues.front();
    for (const auto& ev : sys.finite_eigenvalues)
      if (ev.real() > worst.real()) worst = ev;
    fail(Errc::UnstableSystem,
         "finite pencil eigenvalue " + complex_text(worst) + " is not strictly stable");
  }
  return sys;
}

BlockSplit split_block_diagonal(const DescriptorSystem& sys) {
  const int n = sys.n();
  const int blocks = sys.subsystem_count();
  if (blocks == 0) fail(Errc::PartitionMismatch, "system has no subsystems");
  BlockSplit out;
  out.a_decoupled = Mat::Zero(n, n);
  out.a_coupling = Mat::Zero(n, n);
  std::vector<std::set<int>> in(blocks), outgoing(blocks);
  for (int r = 0; r < n; ++r) {
    const int br = sys.states[r].subsystem;
    for (int c = 0; c < n; ++c) {
      const double v = sys.a(r, c);
      if (v == 0.0) continue;
      const int bc = sys.states[c].subsystem;
      if (br == bc) {
        out.a_decoupled(r, c) = v;  // copied, so A_D + A_C == A exactly
      } else {
        out.a_coupling(r, c) = v;
        in[br].insert(bc);
        outgoing[bc].insert(br);
      }
    }
  }
  out.in_neighbors.resize(blocks);
  out.out_neighbors.resize(blocks);
  for (int b = 0; b < blocks; ++b) {
    out.in_neighbors[b].assign(in[b].begin(), in[b].end());
    out.out_neighbors[b].assign(outgoing[b].begin(), outgoing[b].end());
  }
  return out;
}

}  // namespace gridgame
