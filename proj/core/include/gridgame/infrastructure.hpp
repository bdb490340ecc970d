#pragma once

#include <string>
#include <vector>

namespace gridgame {

// ---------------------------------------------------------------------------
// power network
// ---------------------------------------------------------------------------

/// Synchronous generator. Contributes two states: rotor angle and speed.
struct GeneratorSpec {
  std::string id;
  double inertia = 0.0;   // M, pu * s^2
  double damping = 0.0;   // D, pu * s
  bool gas_fired = false; // drawn from the gas network (ordering + labels only)
  double angle_cost = 0.0;  // $ per pu-rad-second of angle deviation
  double speed_cost = 0.0;  // $ per pu-second of speed deviation
};

enum class BusKind { Compressor, Treatment, Other };

/// Load bus. Contributes one algebraic state: voltage phase angle.
struct BusSpec {
  std::string id;
  BusKind kind = BusKind::Other;
  double angle_cost = 0.0;
};

/// Susceptance-weighted line between two electric nodes (generator or bus).
struct BranchSpec {
  std::string from, to;
  double susceptance = 0.0;
};

/// Shunt tie from a node to the angle reference. At least one is needed or
/// the electric Laplacian keeps its uniform-shift null vector and the pencil
/// fails the stability gate.
struct GroundTieSpec {
  std::string node;
  double susceptance = 0.0;
};

struct PowerSpec {
  std::vector<GeneratorSpec> generators;
  std::vector<BusSpec> buses;
  std::vector<BranchSpec> branches;
  std::vector<GroundTieSpec> ground_ties;
};

// ---------------------------------------------------------------------------
// fluid networks (gas and water share the node/edge vocabulary)
// ---------------------------------------------------------------------------

enum class FluidKind { Gas, Water };

/// Constant-head source (gas well, water reservoir). Not a state: its head
/// deviation is identically zero, which grounds the fluid dynamics.
struct SupplySpec {
  std::string id;
  double head = 0.0;  // operating pressure/level, pu
};

/// Storage node (gas storage, water tank). One differential state.
struct StorageSpec {
  std::string id;
  double charge_ratio = 0.0;  // R, head change per unit net inflow
  double head = 0.0;          // operating point
};

/// Demand junction. One algebraic state (flow balance with constant offtake).
struct JunctionSpec {
  std::string id;
  double head = 0.0;
};

struct PipeSpec {
  std::string from, to;
  double constant = 0.0;  // C in the pipe flow law
};

/// Gas compressor edge, flow P / (k2 - k1 * r^alpha) with r = h_max / h_min.
struct CompressorSpec {
  std::string from, to;
  double power = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double alpha = 0.0;
};

struct FluidSpec {
  FluidKind kind = FluidKind::Gas;
  std::vector<SupplySpec> supplies;
  std::vector<StorageSpec> storages;
  std::vector<JunctionSpec> junctions;
  std::vector<PipeSpec> pipes;
  std::vector<CompressorSpec> compressors;  // gas networks only
};

// ---------------------------------------------------------------------------
// coupling and partition
// ---------------------------------------------------------------------------

/// Head deviation at `node` feeds the power balance of `generator` with the
/// given gain (fuel/coolant delivery scales with delivery pressure). The
/// coupling is one-directional: nothing electric feeds back into the fluids.
struct CouplingSpec {
  std::string node;       // storage or junction id
  std::string generator;
  double gain = 0.0;
};

struct InfrastructureSpec {
  PowerSpec power;
  FluidSpec gas;
  FluidSpec water;
  std::vector<CouplingSpec> gas_couplings;
  std::vector<CouplingSpec> water_couplings;
  /// Subsystems as lists of component ids; every state-owning component
  /// appears exactly once across the blocks.
  std::vector<std::vector<std::string>> partition;
  /// Measured state labels; empty means every state is measured.
  std::vector<std::string> measured;
};

/// Structural validation: positive parameters, resolvable and unique ids,
/// edges inside one network. Throws Error{InvalidScenario} naming the field.
/// Partition coverage is checked later, at assembly, once states exist.
void validate(const InfrastructureSpec& spec);

[[nodiscard]] const char* bus_kind_name(BusKind kind) noexcept;
[[nodiscard]] BusKind bus_kind_from_name(const std::string& name);
[[nodiscard]] const char* fluid_kind_name(FluidKind kind) noexcept;

}  // namespace gridgame
