#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gridgame/infrastructure.hpp"
#include "gridgame/types.hpp"

namespace gridgame {

enum class StateKind { RotorAngle, RotorSpeed, BusAngle, GasHead, WaterHead };

struct StateInfo {
  std::string label;      // "delta(g1)", "omega(g1)", "theta(b1)", "h(gs1)"
  std::string component;  // owning component id
  StateKind kind = StateKind::RotorAngle;
  bool algebraic = false;  // zero row of E
  int subsystem = -1;      // partition block index
};

/// Linear deviation model E x' = A x, y = C x around the operating point.
/// State order: rotor angles, rotor speeds (gas-fired first), bus angles
/// (compressor, treatment, other), gas heads (storages then junctions),
/// water heads (storages then junctions).
struct DescriptorSystem {
  Mat e;     // diagonal, singular rows on algebraic states
  Mat a;
  Mat c;     // selection rows over the measured states
  Vec cost;  // per-state cost coefficients, zero outside the electric block

  std::vector<StateInfo> states;
  std::vector<int> measured;                 // state index per output row
  std::vector<std::vector<int>> subsystems;  // state indices per block, ascending

  std::vector<std::complex<double>> finite_eigenvalues;  // of the pencil (sE - A)
  double stability_margin = 0.0;  // max real part over finite eigenvalues
  double coupling_density = 0.0;  // fill of the electric-row x fluid-column block

  [[nodiscard]] int n() const { return static_cast<int>(states.size()); }
  [[nodiscard]] int outputs() const { return static_cast<int>(measured.size()); }
  [[nodiscard]] int subsystem_count() const { return static_cast<int>(subsystems.size()); }

  /// Index of the state with this label, -1 when absent.
  [[nodiscard]] int state_index(const std::string& label) const;
  [[nodiscard]] bool state_electric(int i) const;
  [[nodiscard]] std::vector<int> electric_states() const;
  /// True when every member state of block i is electric.
  [[nodiscard]] bool subsystem_electric(int i) const;
};

/// Builds the deviation model: linearizes every fluid edge at its operating
/// heads, assembles the swing dynamics and one-directional fluid-to-power
/// coupling, resolves the partition and measured set, and gates on pencil
/// regularity (IrregularPencil) and asymptotic stability (UnstableSystem:
/// some finite eigenvalue has real part >= -1e-9).
DescriptorSystem assemble(const InfrastructureSpec& spec);

/// A = A_D + A_C with A_D the within-subsystem entries (exact split: A_C is
/// formed by copying, not subtracting). Neighbor sets are directed:
/// in_neighbors[i] lists blocks whose states enter block i's equations.
struct BlockSplit {
  Mat a_decoupled;
  Mat a_coupling;
  std::vector<std::vector<int>> in_neighbors;
  std::vector<std::vector<int>> out_neighbors;
};

BlockSplit split_block_diagonal(const DescriptorSystem& sys);

/// Finite eigenvalues of the pencil (sE - A): generalized eigenvalues with
/// |beta| above the infinite-eigenvalue cutoff. Shared by assemble and the
/// observer stability check.
std::vector<std::complex<double>> finite_pencil_eigenvalues(const Mat& e, const Mat& a);

/// True when det(sE - A) is nonzero at one of a fixed set of probe points.
[[nodiscard]] bool pencil_regular(const Mat& e, const Mat& a);

}  // namespace gridgame
